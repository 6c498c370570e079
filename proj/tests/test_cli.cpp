#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string output;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + NCTORIC_CLI_PATH + "\" " + args + " 2>&1";
  Run out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.output.append(buf.data(), n);
  const int status = pclose(pipe);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string data(const std::string& name) { return std::string("\"") + NCTORIC_DATA_DIR + "/" + name + "\""; }

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("nctoric_cli_" + std::to_string(getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }
};

nlohmann::json read(const std::string& path) { return nlohmann::json::parse(std::ifstream(path)); }

}  // namespace

TEST_CASE("fan check") {
  CHECK(cli("fan check " + data("p2.fan")).code == 0);
  CHECK(cli("fan check " + data("p1.fan")).code == 0);
  const Run idx = cli("fan check " + data("index2.fan"));
  CHECK(idx.code == 1);
  CHECK(idx.output.find("Assumption 2.2.2") != std::string::npos);
  const Run syn = cli("fan check " + data("bad_syntax.fan"));
  CHECK(syn.code == 2);
  CHECK(syn.output.find("bad_syntax.fan:4:") != std::string::npos);
  CHECK(cli("fan check /nonexistent/file.fan").code == 2);
  CHECK(cli("fan").code == 2);
  CHECK(cli("bogus").code == 2);
}

TEST_CASE("system build, soften and check") {
  TempDir tmp;
  const std::string sys = tmp.file("p2.sys");
  CHECK(cli("system build " + data("p2.fan") + " --out " + sys).code == 0);
  CHECK(cli("system check " + sys).code == 0);

  // the written system reads back to the same charts
  const auto j = read(sys);
  CHECK(j.contains("charts"));
  const std::string again = tmp.file("again.sys");
  CHECK(cli("system build " + sys + " --out " + again).code == 0);
  CHECK(read(again)["charts"] == j["charts"]);

  const std::string extras = tmp.write("extras.json", R"({"{1}": ["z1 z2 z1^-1 z2^-1"]})");
  const std::string soft = tmp.file("soft.sys");
  CHECK(cli("system soften " + sys + " --extras " + extras + " --out " + soft).code == 0);
  CHECK(cli("system check " + soft).code == 0);
  CHECK(read(soft)["charts"]["{0,1}"] == j["charts"]["{0,1}"]);

  const std::string touch = tmp.write("touch.json", R"({"{0,1}": ["z1"]})");
  const Run t = cli("system soften " + sys + " --extras " + touch);
  CHECK(t.code == 1);
  CHECK(t.output.find("Def 2.2.14") != std::string::npos);

  const std::string badlift = tmp.write("bad.sys", R"({"fan": ")" + std::string(NCTORIC_DATA_DIR) +
                                                       R"(/p2.fan", "lifts": {"{0,1}": ["z1 z3", "z2"]}})");
  const Run bl = cli("system check " + badlift);
  CHECK(bl.code == 2);
  CHECK(bl.output.find("index 3") != std::string::npos);
}

TEST_CASE("sheaves and sections") {
  TempDir tmp;
  const std::string o1 = tmp.file("o1.sheaf");
  CHECK(cli("sheaf from-divisor " + data("p2.fan") + " --divisor " + data("d1.div") + " --out " + o1).code == 0);
  CHECK(cli("sheaf check " + o1).code == 0);
  CHECK(cli("sheaf isom " + o1 + " " + o1).code == 0);
  const std::string o3 = tmp.file("o3.sheaf");
  CHECK(cli("sheaf from-divisor " + data("p2.fan") + " --divisor " + data("d3.div") + " --out " + o3).code == 0);
  CHECK(cli("sheaf isom " + o1 + " " + o3).code == 1);

  const Run list = cli("section list " + data("p2.fan") + " --divisor " + data("d3.div") + " --json");
  CHECK(list.code == 0);
  const Run list1 = cli("section list " + data("p2.fan") + " --divisor " + data("d1.div"));
  CHECK(list1.code == 0);
  for (const char* pt : {"(0,0)", "(0,1)", "(1,0)"}) CHECK(list1.output.find(pt) != std::string::npos);

  const std::string s0 = tmp.file("s0.sec"), s1 = tmp.file("s1.sec");
  CHECK(cli("section extend " + o1 + " --point 0,0 --out " + s0).code == 0);
  CHECK(cli("section extend " + o1 + " --point 1,0 --out " + s1).code == 0);
  CHECK(cli("section check " + s0).code == 0);
  const Run outside = cli("section extend " + o1 + " --point 5,5");
  CHECK(outside.code == 1);
  CHECK(outside.output.find("Prop 3.8") != std::string::npos);

  // tamper: a presentation outside its chart
  auto j = read(s1);
  j["presentation"]["{0,1}"] = "z1^-1";
  const std::string tampered = tmp.write("t.sec", j.dump());
  const Run tr = cli("section check " + tampered);
  CHECK(tr.code == 1);
  CHECK(tr.output.find("Def 3.6") != std::string::npos);

  const std::string sub = tmp.file("sub.json");
  CHECK(cli("subscheme build " + s0 + " " + s1 + " --out " + sub).code == 0);
  const Run mem = cli("subscheme member " + sub + " --cone {0,1} --element \"z1\"");
  CHECK(mem.code == 0);
}

TEST_CASE("morphisms and probes") {
  CHECK(cli("morphism check " + data("p1_brane.mor")).code == 0);
  const Run broken = cli("morphism check " + data("broken.mor"));
  CHECK(broken.code == 1);
  CHECK(broken.output.find("Def 4.2.9(ii)") != std::string::npos);
  const Run entry = cli("morphism check " + data("bad_entry.mor"));
  CHECK(entry.code == 2);
  CHECK(entry.output.find("1/0") != std::string::npos);

  const Run sur = cli("morphism surrogate " + data("p1_brane.mor") + " --json");
  CHECK(sur.code == 0);
  CHECK(sur.output.find("\"dimension\": 2") != std::string::npos);

  TempDir tmp;
  const std::string m = tmp.file("m.mor");
  CHECK(cli("morphism sample " + data("p1.fan") + " --r 1 --seed 3 --out " + m).code == 0);
  CHECK(cli("morphism check " + m).code == 0);

  const Run a1 = cli("probe a1 --matrix \"[[1,0],[0,0]]\"");
  CHECK(a1.code == 0);
  CHECK(a1.output.find("t^2 - t") != std::string::npos);
  CHECK(cli("probe a1 --matrix \"[[1,0],[0\"").code == 2);
}
