// End-to-end tests for the stratcli binary.  The test runner passes the
// binary's location in the STRATCLI environment variable (set by CTest);
// every case shells out, captures stdout/stderr, and checks bytes and exit
// codes against frozen expectations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <utility>
#include <vector>

using nlohmann::json;

namespace {

std::string cli_path() {
  const char *p = std::getenv("STRATCLI");
  REQUIRE_MESSAGE(p != nullptr, "STRATCLI must point at the built binary");
  return p;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

/// Run the CLI with `args`, capture stdout/stderr, return the exit code.
int run(const std::string &args, std::string *out = nullptr,
        std::string *err = nullptr) {
  std::string cmd = cli_path() + " " + args + " >/tmp/stratcli_out.txt 2>/tmp/stratcli_err.txt";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  if (out) *out = slurp("/tmp/stratcli_out.txt");
  if (err) *err = slurp("/tmp/stratcli_err.txt");
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

const char *kGl2Mu10 = "/tmp/stratcli_gl2_mu10.spec";
const char *kGl3Plain = "/tmp/stratcli_gl3.spec";
const char *kGl3Mu110 = "/tmp/stratcli_gl3_mu110.spec";
const char *kGl3Mu210 = "/tmp/stratcli_gl3_mu210.spec";

void write_specs() {
  write_file(kGl2Mu10, "family=GL\nrank=2\nsigma=identity\nmu=1,0\n");
  write_file(kGl3Plain, "family=GL\nrank=3\n");
  write_file(kGl3Mu110, "family=GL\nrank=3\nmu=1,1,0\n");
  write_file(kGl3Mu210, "family=GL\nrank=3\nmu=2,1,0\n");
}

/// Independent covering-relation oracle: recompute the covers of a poset
/// from its full order matrix by transitive reduction, without reusing the
/// library's Hasse-edge code.
std::set<std::pair<int, int>> covers_from_leq(const json &leq) {
  int n = (int)leq.size();
  auto strictly = [&](int i, int j) {
    return i != j && leq[i][j].get<int>() == 1;
  };
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!strictly(i, j)) continue;
      bool direct = true;
      for (int k = 0; k < n && direct; ++k)
        if (strictly(i, k) && strictly(k, j)) direct = false;
      if (direct) out.insert({i, j});
    }
  return out;
}

std::set<std::pair<int, int>> edges_from_dot(const std::string &dot) {
  std::set<std::pair<int, int>> out;
  std::istringstream ss(dot);
  std::string line;
  while (std::getline(ss, line)) {
    int a, b;
    if (std::sscanf(line.c_str(), " n%d -> n%d;", &a, &b) == 2) out.insert({a, b});
  }
  return out;
}

} // namespace

TEST_CASE("describe reports the frozen GL_3 summary") {
  write_specs();
  std::string out;
  REQUIRE(run("describe --spec " + std::string(kGl3Plain), &out) == 0);
  json j = json::parse(out);
  CHECK(j["family"] == "GL");
  CHECK(j["rank"] == 3);
  CHECK(j["ss_rank"] == 2);
  CHECK(j["weyl_size"] == 6);
  CHECK(j["pi1"] == "Z");
  CHECK(j["positive_roots"].size() == 3);
  CHECK(j["simple_roots"][0] == json::array({1, -1, 0}));
}

TEST_CASE("bgmu emits the two-class poset for minuscule GL_2") {
  write_specs();
  std::string out;
  REQUIRE(run("bgmu --spec " + std::string(kGl2Mu10), &out) == 0);
  json j = json::parse(out);
  REQUIRE(j["elements"].size() == 2);
  CHECK(j["mu"] == json::array({1, 0}));
  CHECK(j["basic_index"] == 0);
  CHECK(j["max_index"] == 1);
  CHECK(j["elements"][0]["nu"] == json::array({"1/2", "1/2"}));
  CHECK(j["elements"][1]["nu"] == json::array({"1", "0"}));
  // Same total degree, same Kottwitz point.
  CHECK(j["elements"][0]["kappa"] == j["elements"][1]["kappa"]);
  CHECK(j["edges"] == json::array({json::array({0, 1})}));
}

TEST_CASE("eo2newton reproduces the frozen minuscule GL_2 table") {
  write_specs();
  std::string out;
  REQUIRE(run("eo2newton --spec " + std::string(kGl2Mu10), &out) == 0);
  json j = json::parse(out);
  REQUIRE(j["table"].size() == 2);
  CHECK(j["mu_bar"] == json::array({"1", "0"})); // sigma = id: the average is mu
  CHECK(j["table"][0]["w"] == "e");
  CHECK(j["table"][0]["nu"] == json::array({"1/2", "1/2"}));
  CHECK(j["table"][0]["is_b_max"] == false);
  CHECK(j["table"][1]["w"] == "s1");
  CHECK(j["table"][1]["nu"] == json::array({"1", "0"}));
  CHECK(j["table"][1]["is_b_max"] == true);
}

TEST_CASE("hncheck affirms all three conditions in the regular GL_2 case") {
  write_specs();
  std::string out;
  REQUIRE(run("hncheck --spec " + std::string(kGl2Mu10), &out) == 0);
  json j = json::parse(out);
  CHECK(j["applicable"] == true);
  CHECK(j["kappa_matches"] == true);
  CHECK(j["slope_in_vm_plus"] == true);
  CHECK(j["newton_g_dominant"] == true);
  CHECK(j["mu_bar"] == json::array({"1", "0"}));
  CHECK(j["levi_simple_roots"].empty()); // Cent(mu_bar) is the torus
  CHECK(j["m_newton"] == json::array({"1", "0"}));
}

TEST_CASE("identical configuration and seed give byte-identical output") {
  write_specs();
  for (std::string cmd : {"describe --spec " + std::string(kGl3Plain),
                          "bgmu --spec " + std::string(kGl2Mu10),
                          "eoposet --spec " + std::string(kGl3Mu210) + " --format dot",
                          "verify-loop --spec " + std::string(kGl2Mu10) +
                              " --samples 4 --N 2 --seed 99"}) {
    std::string first, second;
    REQUIRE(run(cmd, &first) == 0);
    REQUIRE(run(cmd, &second) == 0);
    CHECK(first == second);
  }
}

TEST_CASE("the seed flag reaches the experiment reports") {
  write_specs();
  std::string out;
  REQUIRE(run("verify-loop --spec " + std::string(kGl2Mu10) +
                  " --samples 3 --N 2 --seed 7 --m-schedule 1,2",
              &out) == 0);
  json j = json::parse(out);
  REQUIRE(j.is_array());
  for (const json &rep : j) {
    CHECK(rep["seed"] == 7);
    CHECK(rep["params"]["m_schedule"] == json::array({1, 2}));
  }
}

TEST_CASE("DOT edge sets equal the covering relation of the JSON posets") {
  write_specs();
  for (std::string base : {"bgmu --spec " + std::string(kGl3Mu210),
                           "bgmu --spec " + std::string(kGl3Mu110),
                           "eoposet --spec " + std::string(kGl3Mu210),
                           "eoposet --spec " + std::string(kGl3Mu110)}) {
    std::string jtext, dtext;
    REQUIRE(run(base + " --format json", &jtext) == 0);
    REQUIRE(run(base + " --format dot", &dtext) == 0);
    json j = json::parse(jtext);
    auto expect = covers_from_leq(j["leq"]);
    auto got = edges_from_dot(dtext);
    CHECK(got == expect);
    CHECK(!got.empty());
    // The emitted edge list matches too.
    std::set<std::pair<int, int>> listed;
    for (const json &e : j["edges"]) listed.insert({e[0].get<int>(), e[1].get<int>()});
    CHECK(listed == expect);
  }
}

TEST_CASE("eoposet respects the quotient counting identity for GL_3") {
  write_specs();
  std::string out;
  REQUIRE(run("eoposet --spec " + std::string(kGl3Mu110), &out) == 0);
  json j = json::parse(out);
  // mu = (1,1,0) has J = {s1}; |^JW| * |W_J| = 6.
  CHECK(j["J"] == json::array({0}));
  CHECK(j["elements"].size() == 3);
  REQUIRE(run("eoposet --spec " + std::string(kGl3Mu210), &out) == 0);
  j = json::parse(out);
  CHECK(j["J"].empty());
  CHECK(j["elements"].size() == 6);
  CHECK(j["max_pos"] != j["min_pos"]);
}

TEST_CASE("--out writes exactly the bytes that stdout would carry") {
  write_specs();
  std::string viastdout;
  REQUIRE(run("bgmu --spec " + std::string(kGl2Mu10), &viastdout) == 0);
  std::string direct;
  REQUIRE(run("bgmu --spec " + std::string(kGl2Mu10) + " --out /tmp/stratcli_file.json",
              &direct) == 0);
  CHECK(direct.empty());
  CHECK(slurp("/tmp/stratcli_file.json") == viastdout);
}

TEST_CASE("exit codes separate usage, computation, and verification outcomes") {
  write_specs();
  std::string out, err;

  SUBCASE("usage errors exit 1") {
    CHECK(run("frobnicate --spec " + std::string(kGl2Mu10), &out, &err) == 1);
    CHECK(run("bgmu", &out, &err) == 1); // --spec is required
    CHECK(run("describe --spec " + std::string(kGl3Plain) + " --format dot", &out,
              &err) == 1);
    CHECK(run("bgmu --spec " + std::string(kGl2Mu10) + " --format yaml", &out,
              &err) == 1);
  }

  SUBCASE("computation and input errors exit 2") {
    CHECK(run("describe --spec /tmp/stratcli_missing.spec", &out, &err) == 2);
    write_file("/tmp/stratcli_bad.spec", "family=GL\nrank=2\nwobble=9\n");
    CHECK(run("describe --spec /tmp/stratcli_bad.spec", &out, &err) == 2);
    CHECK(err.find("spec line 3") != std::string::npos);
    CHECK(run("bgmu --spec " + std::string(kGl3Plain), &out, &err) == 2); // no mu
    CHECK(run("verify-loop --spec " + std::string(kGl2Mu10) + " --q 5", &out,
              &err) == 2); // 5 is not a power of 2 or 3
  }

  SUBCASE("clean verification runs exit 0") {
    CHECK(run("verify-loop --spec " + std::string(kGl2Mu10) + " --samples 2 --N 2",
              &out, &err) == 0);
    CHECK(run("--help", &out, &err) == 0);
  }
}

TEST_CASE("verify-loop --exhaustive covers the full minuscule GL_2 double cosets") {
  write_specs();
  std::string out, err;
  REQUIRE(run("verify-loop --spec " + std::string(kGl2Mu10) +
                  " --exhaustive --N 2 --samples 6 --m-schedule 1,2",
              &out, &err) == 0);
  json j = json::parse(out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 4); // A, B, C, hn
  CHECK(j[0]["experiment"] == "A");
  CHECK(j[0]["samples"] == 8); // |K_1 mu(t) K_1| truncated at N=2
  CHECK(j[0]["found"] == 8);
  CHECK(j[0]["hard_failures"] == 0);
  CHECK(j[1]["experiment"] == "B");
  CHECK(j[1]["samples"] == 16); // |I mu(t) I| truncated at N=2
  CHECK(j[1]["found"] == 16);
  CHECK(j[1]["hard_failures"] == 0);
  CHECK(j[2]["experiment"] == "C");
  CHECK(j[2]["samples"] == 6);
  CHECK(j[2]["found"] == 6);
  CHECK(j[3]["experiment"] == "hn");
  CHECK(j[3]["found"] == 6);
  // The stderr side-channel carries the human summary.
  CHECK(err.find("experiment A") != std::string::npos);
}

TEST_CASE("text format stays available for every command") {
  write_specs();
  std::string out;
  for (std::string cmd : {"describe", "bgmu", "eoposet", "eo2newton", "hncheck"}) {
    REQUIRE(run(cmd + " --spec " + std::string(kGl2Mu10) + " --format text", &out) == 0);
    CHECK(!out.empty());
    CHECK(out[0] != '{'); // not a JSON document
    CHECK(out[0] != '[');
  }
  REQUIRE(run("verify-loop --spec " + std::string(kGl2Mu10) +
                  " --samples 2 --N 2 --format text",
              &out) == 0);
  CHECK(out.find("experiment A") != std::string::npos);
}
