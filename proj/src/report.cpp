#include "nctoric/report.hpp"

#include <sstream>

namespace nctoric {

namespace {

const char* kind_name(Finding::Kind k) {
  switch (k) {
    case Finding::Kind::Pass: return "pass";
    case Finding::Kind::Fail: return "fail";
    case Finding::Kind::BoundRelative: return "bound-relative";
    case Finding::Kind::Info: return "info";
  }
  return "?";
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::BoundRelative: return "bound-relative";
  }
  return "?";
}

int exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::BoundRelative: return 3;
  }
  return 1;
}

void Report::pass(std::string clause, std::string locus, std::string message) {
  findings_.push_back({Finding::Kind::Pass, std::move(clause), std::move(locus), std::move(message), {}});
}

void Report::fail(std::string clause, std::string locus, std::string message, std::string witness) {
  findings_.push_back(
      {Finding::Kind::Fail, std::move(clause), std::move(locus), std::move(message), std::move(witness)});
}

void Report::bound_relative(std::string clause, std::string locus, std::string message) {
  findings_.push_back({Finding::Kind::BoundRelative, std::move(clause), std::move(locus), std::move(message), {}});
}

void Report::info(std::string clause, std::string locus, std::string message) {
  findings_.push_back({Finding::Kind::Info, std::move(clause), std::move(locus), std::move(message), {}});
}

void Report::merge(const Report& other) {
  findings_.insert(findings_.end(), other.findings_.begin(), other.findings_.end());
}

Status Report::status() const {
  bool bounded = false;
  for (const auto& f : findings_) {
    if (f.kind == Finding::Kind::Fail) return Status::Fail;
    if (f.kind == Finding::Kind::BoundRelative) bounded = true;
  }
  return bounded ? Status::BoundRelative : Status::Pass;
}

std::vector<Finding> Report::failures() const {
  std::vector<Finding> out;
  for (const auto& f : findings_)
    if (f.kind == Finding::Kind::Fail) out.push_back(f);
  return out;
}

bool Report::cites(const std::string& clause) const {
  for (const auto& f : findings_)
    if (f.kind == Finding::Kind::Fail && f.clause.rfind(clause, 0) == 0) return true;
  return false;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["subject"] = subject_;
  j["status"] = to_string(status());
  j["findings"] = nlohmann::json::array();
  for (const auto& f : findings_) {
    nlohmann::json e{{"kind", kind_name(f.kind)}, {"clause", f.clause}, {"locus", f.locus}};
    if (!f.message.empty()) e["message"] = f.message;
    if (!f.witness.empty()) e["witness"] = f.witness;
    j["findings"].push_back(std::move(e));
  }
  return j;
}

std::string Report::to_text(bool verbose) const {
  std::ostringstream os;
  std::size_t passes = 0;
  for (const auto& f : findings_) {
    if (f.kind == Finding::Kind::Pass) {
      ++passes;
      if (!verbose) continue;
    }
    os << "  [" << kind_name(f.kind) << "] " << f.clause << " @ " << f.locus;
    if (!f.message.empty()) os << ": " << f.message;
    if (!f.witness.empty()) os << " (witness: " << f.witness << ")";
    os << '\n';
  }
  std::ostringstream head;
  head << subject_ << ": " << to_string(status()) << " (" << passes << " checks passed, "
       << failures().size() << " failed)\n";
  return head.str() + os.str();
}

}  // namespace nctoric
