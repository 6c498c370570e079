#pragma once

// Verification reports. Every check in the library returns one of these
// rather than throwing; findings carry the clause they test.

#include "json.hpp"

#include <string>
#include <vector>

namespace nctoric {

enum class Status { Pass, Fail, BoundRelative };

std::string to_string(Status s);
int exit_code(Status s);

struct Finding {
  enum class Kind { Pass, Fail, BoundRelative, Info };

  Kind kind = Kind::Pass;
  std::string clause;  // statement label, e.g. "Def 2.2.4(2)"
  std::string locus;   // cone, pair or chain
  std::string message;
  std::string witness;
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string subject) : subject_(std::move(subject)) {}

  void pass(std::string clause, std::string locus, std::string message = {});
  void fail(std::string clause, std::string locus, std::string message, std::string witness = {});
  void bound_relative(std::string clause, std::string locus, std::string message);
  void info(std::string clause, std::string locus, std::string message);
  void merge(const Report& other);

  Status status() const;
  bool ok() const { return status() != Status::Fail; }
  const std::string& subject() const { return subject_; }
  const std::vector<Finding>& findings() const { return findings_; }
  std::vector<Finding> failures() const;
  /// True when some failing finding cites `clause` (prefix match).
  bool cites(const std::string& clause) const;

  nlohmann::json to_json() const;
  /// Failures, bound notes and info lines; passes only when verbose.
  std::string to_text(bool verbose = false) const;

 private:
  std::string subject_;
  std::vector<Finding> findings_;
};

}  // namespace nctoric
