#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sullivan/corpus.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  static int counter = 0;
  auto err_path = std::filesystem::temp_directory_path() /
                  ("sullivan_cli_" + std::to_string(getpid()) + "_" + std::to_string(counter++) + ".err");
  std::string cmd = std::string("\"") + SULLIVAN_CLI + "\" " + args + " 2>\"" + err_path.string() + "\"";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  std::filesystem::remove(err_path);
  return r;
}

std::string model_file(const char* name) { return std::string("\"") + MODELS_DIR + "/" + name + "\""; }

json run_json(const std::string& args, int expected_code = 0) {
  auto r = run(args + " --format json");
  INFO(args << "\n" << r.err);
  REQUIRE(r.code == expected_code);
  return json::parse(r.out);
}

// Standalone integer tokens in order of appearance, skipping digits glued to
// identifiers such as n_2 or x^3.
std::vector<std::string> numbers(const std::string& text) {
  std::vector<std::string> out;
  auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^'; };
  std::size_t i = 0;
  while (i < text.size()) {
    if (!word(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && word(text[j])) ++j;
    std::string tok = text.substr(i, j - i);
    if (std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      out.push_back(tok);
    i = j;
  }
  return out;
}

}  // namespace

TEST_CASE("json reports match the golden files") {
  for (const auto& entry : sullivan::corpus()) {
    CAPTURE(entry.id);
    auto r = run("report --corpus " + entry.id + " --format json");
    REQUIRE(r.code == 0);
    CHECK(r.out == slurp(std::filesystem::path(GOLDEN_DIR) / (entry.id + ".json")));
  }
  auto r = run("report --model " + model_file("empty.model") + " --format json");
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(std::filesystem::path(GOLDEN_DIR) / "empty.json"));
}

TEST_CASE("reports are deterministic") {
  for (const char* id : {"e6-pure", "mixed-1", "s2xs5-twisted"}) {
    CAPTURE(id);
    auto a = run(std::string("report --corpus ") + id + " --format json");
    auto b = run(std::string("report --corpus ") + id + " --format json");
    CHECK(a.out == b.out);
    auto t1 = run(std::string("report --corpus ") + id);
    auto t2 = run(std::string("report --corpus ") + id);
    CHECK(t1.out == t2.out);
  }
  auto c1 = run("corpus run --format json");
  auto c2 = run("corpus run --format json");
  CHECK(c1.out == c2.out);
}

TEST_CASE("table and json carry the same numbers") {
  for (const char* id : {"cp2", "e6-pure", "mixed-1", "free-odd"}) {
    CAPTURE(id);
    auto j = run(std::string("report --corpus ") + id + " --format json");
    auto t = run(std::string("report --corpus ") + id);
    REQUIRE(j.code == t.code);
    CHECK(numbers(j.out) == numbers(t.out));
  }
  for (const char* cmd : {"cohomology --corpus e6-pure", "page --corpus cp2 --r 2", "toomer --corpus cp3",
                          "e0 --corpus s2xs5-twisted", "elliptic --corpus mixed-1"}) {
    CAPTURE(cmd);
    auto j = run(std::string(cmd) + " --format json");
    auto t = run(cmd);
    CHECK(numbers(j.out) == numbers(t.out));
  }
}

TEST_CASE("the report of CP2") {
  auto r = run("report --corpus cp2 --format json");
  CHECK(r.out.find("\"N\": 4") != std::string::npos);
  CHECK(r.out.find("\"e\": 2") != std::string::npos);
  CHECK(r.out.find("\"dimH\": 3") != std::string::npos);
  auto j = json::parse(r.out);
  CHECK(j["summary"]["N"] == 4);
  CHECK(j["summary"]["e"] == 2);
  CHECK(j["summary"]["dimH"] == 3);
  CHECK(j["engine"]["bounds"]["cohomology_max_degree"] == 6);
}

TEST_CASE("the report of the empty model") {
  auto j = run_json("report --model " + model_file("empty.model"));
  CHECK(j["summary"]["dimH"] == 1);
  CHECK(j["summary"]["N"] == 0);
  CHECK(j["cohomology"]["dims"] == json::array({1, 0, 0}));
  CHECK(j["e0_spectrum"]["einfty_support"] == json::array({0}));
  CHECK(j["invariants"]["dimV"] == 0);
  CHECK(j["invariants"]["k"].is_null());
}

TEST_CASE("toomer on CP2 agrees with the formula") {
  auto j = run_json("toomer --corpus cp2");
  CHECK(j["toomer"]["computed"] == 2);
  CHECK(j["toomer"]["formula"] == 2);
  CHECK(j["toomer"]["agree"] == true);
  CHECK(j["toomer"]["lower_bound"] == false);
  auto t = run("toomer --corpus cp2");
  CHECK(t.out.find("computed     2") != std::string::npos);
  CHECK(t.out.find("agree        true") != std::string::npos);
}

TEST_CASE("nogaps on the e6 model") {
  auto j = run_json("nogaps --corpus e6-pure");
  CHECK(j["nogaps"]["conclusion"] == "Holds");
  CHECK(j["nogaps"]["values"]["toomer"] == 4);
  auto e = run_json("einfty --corpus e6-pure --max-total 8");
  CHECK(e["einfty"]["columns"] == json::array({0, 1, 2, 3, 4}));
  CHECK(e["einfty"]["converges_to_H"] == true);
}

TEST_CASE("exit codes") {
  SECTION("validate on a file with d squared nonzero") {
    auto r = run("validate --model " + model_file("dsquared.model"));
    CHECK(r.code == 1);
    CHECK(r.err.find("d-squared") != std::string::npos);
    CHECK(r.err.find("d(d(w))") != std::string::npos);
    auto j = run_json("validate --model " + model_file("dsquared.model"), 1);
    CHECK(j["validate"]["valid"] == false);
    CHECK(j["validate"]["diagnostics"][0]["line"] == 6);
  }
  SECTION("valid models") {
    CHECK(run("validate --model " + model_file("s2.model")).code == 0);
    auto j = run_json("validate --corpus mixed-1");
    CHECK(j["validate"]["valid"] == true);
    CHECK(j["invariants"]["N_formula"] == 12);
  }
  SECTION("diagnostics on other commands") {
    auto r = run("cohomology --model " + model_file("minimality.model"));
    CHECK(r.code == 1);
    CHECK(r.err.find("minimality.model:3:") != std::string::npos);
  }
  SECTION("unmet hypotheses are answers") {
    auto j = run_json("nogaps --corpus mixed-1");
    CHECK(j["nogaps"]["conclusion"] == "HypothesisNotMet");
    CHECK_FALSE(j["nogaps"]["witness"].get<std::string>().empty());
    CHECK(run("hilali --model " + model_file("polynomial.model")).code == 0);
    auto el = run_json("elliptic --model " + model_file("polynomial.model"));
    CHECK(el["elliptic"]["status"] == "NotElliptic");
  }
  SECTION("budget exhaustion is Undetermined") {
    auto j = run_json("elliptic --corpus e6-pure --budget 2", 2);
    CHECK(j["elliptic"]["status"] == "Undetermined");
    CHECK(run("hilali --corpus e6-pure --budget 2").code == 2);
    CHECK(run("cohomology --corpus e6-pure --budget 2").code == 2);
  }
  SECTION("usage errors") {
    CHECK(run("").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("cohomology").code == 1);
    CHECK(run("cohomology --corpus nope").code == 1);
    CHECK(run("cohomology --corpus cp2 --format xml").code == 1);
    CHECK(run("e0 --corpus cp2 --class y").code == 1);
    CHECK(run("e0 --corpus cp2 --class q").code == 1);
    CHECK(run("--help").code == 0);
  }
}

TEST_CASE("single commands") {
  auto h = run_json("cohomology --corpus e6-pure --max-degree 8");
  CHECK(h["cohomology"]["dims"] == json::array({1, 0, 2, 0, 3, 0, 2, 0, 1}));
  CHECK(h["cohomology"]["total"] == 9);

  auto b = run_json("bigraded --corpus cp2");
  CHECK(b["bigraded"]["entries"].size() == 3);

  auto p = run_json("page --corpus cp2 --r 2");
  REQUIRE(p["page"]["differentials"].size() == 1);
  CHECK(p["page"]["differentials"][0]["p"] == 1);
  CHECK(p["page"]["differentials"][0]["q"] == 4);
  CHECK(p["page"]["differentials"][0]["rank"] == 1);
  CHECK(run_json("page --corpus cp2 --r 3")["page"]["entries"].size() == 3);

  auto e0 = run_json("e0 --corpus s2xs5-twisted --class \"z - x*y\"");
  CHECK(e0["e0"]["quotient_route"] == 1);
  CHECK(e0["e0"]["agree"] == true);
  auto spectrum = run_json("e0 --corpus e6-pure");
  CHECK(spectrum["e0"]["einfty_support"] == json::array({0, 1, 2, 3, 4}));
  CHECK(spectrum["e0"]["consistent"] == true);

  auto w = run_json("elliptic --corpus s2 --window 3");
  CHECK(w["elliptic"]["window"] == 6);

  // Matrix entries are exact rationals serialized as strings.
  auto paged = run_json("page --corpus e6-pure --r 2 --max-total 10");
  std::size_t entries = 0;
  for (const auto& d : paged["page"]["differentials"])
    for (const auto& row : d["matrix"])
      for (const auto& x : row) {
        CHECK(x.is_string());
        ++entries;
      }
  CHECK(entries > 0);
}

TEST_CASE("corpus listing and runs") {
  auto all = run_json("corpus list");
  CHECK(all["models"].size() == sullivan::corpus().size());
  auto pure = run_json("corpus list --filter pure");
  for (const auto& m : pure["models"]) CHECK(m["tags"].get<std::string>().find("pure") != std::string::npos);
  CHECK(pure["models"].size() < all["models"].size());

  auto runs = run_json("corpus run");
  REQUIRE(runs["models"].size() == sullivan::corpus().size());
  for (const auto& m : runs["models"]) {
    CAPTURE(m["id"].get<std::string>());
    CHECK(m["tags_consistent"] == true);
    CHECK(m["summary"]["elliptic"] == "Elliptic");
  }
  CHECK(run_json("corpus run --filter odd")["models"].size() == 3);
}
