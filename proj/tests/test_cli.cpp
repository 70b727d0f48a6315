#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef MFSPIN_CLI
#error "MFSPIN_CLI must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "mfspin_cli_test";
  fs::create_directories(dir);
  return dir;
}

Run run(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = std::string(MFSPIN_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze") {
  auto r = run("analyze --model p-spin --p 2 --beta 1 --h 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"weight\": 0.49999") != std::string::npos);
  r = run("analyze --model six-spin --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.find("0,0.5,2,4,") != std::string::npos);
  CHECK(r.out.find("1,0.9500000000000") != std::string::npos);
  r = run("analyze --model p-spin --p 2 --beta 0 --h 0 --format csv");
  CHECK(r.out.find("0,0.5,1,2,") != std::string::npos);
  CHECK(r.out.find("\n1,") == std::string::npos);
}

TEST_CASE("dist") {
  auto r = run("dist --terms 0:1 --n 3");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("k,k_over_n,pmf,cdf\n0,0,0.12500000000000", 0) == 0);
  CHECK(r.out.find("\n1,0.33333333333333331,0.375") != std::string::npos);
  CHECK(r.out.find("\n2,0.66666666666666663,0.375") != std::string::npos);
  CHECK(r.out.find("\n3,1,0.12500000000000") != std::string::npos);
  const auto summary = scratch() / "summary.json";
  r = run("dist --model p-spin --p 2 --beta 1 --h 0 --n 2000 --summary " + summary.string() +
          " --out " + (scratch() / "dist.csv").string());
  CHECK(r.code == 0);
  const auto js = slurp(summary);
  for (const char* key : {"\"log_Z\"", "\"mean\"", "\"variance\"", "\"windows\"", "\"schema_version\""})
    CHECK(js.find(key) != std::string::npos);
  CHECK(run("dist --model p-spin --beta 1 --n 0").code == 2);
  CHECK(run("dist --model p-spin --beta 1 --n 20000000").code == 2);
}

TEST_CASE("phase") {
  auto r = run("phase --model four-spin --beta-grid 0.02,0.05,0.0833333333333333333");
  CHECK(r.code == 0);
  CHECK(r.out.find("beta,boundary\n") == 0);
  CHECK(r.out.find(",0.5\n") != std::string::npos);
  r = run("phase --model four-spin --beta-grid 0.2 --h-grid 0.7");
  CHECK(r.out.find(",R2,R2") != std::string::npos);
  r = run("phase --model annealed --d 3 --beta-grid 0.5 --h-grid 0");
  CHECK(r.out.find(",0.5493061443340") != std::string::npos);
  CHECK(run("phase --model six-spin --beta-grid 0.1").code == 2);
}

TEST_CASE("mle") {
  auto r = run("mle --model p-spin --p 2 --beta 0.4 --h 0 --param beta --reps 5");
  CHECK(r.code == 4);
  CHECK(r.out.find("0.5") != std::string::npos);
  CHECK(run("mle --model p-spin --p 2 --beta 0.3 --h 0.2 --reps 0").code == 1);

  const auto a = scratch() / "a.csv", b = scratch() / "b.csv";
  const std::string base = "mle --model p-spin --p 2 --beta 0.3 --h 0.2 --param h --n 2000 --reps 200 --format csv --out ";
  CHECK(run(base + a.string()).code == 0);
  CHECK(run(base + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("replicate,k,estimate,rescaled_error,status\n", 0) == 0);
}

TEST_CASE("limit-check exit codes") {
  auto r = run("limit-check --model p-spin --p 2 --beta 0.25 --h 0 --n-list 1000,10000,100000");
  CHECK(r.code == 0);
  CHECK(run("limit-check --model p-spin --p 2 --beta 0.25 --n-list 1000,10000").code == 1);
  // The symmetric critical model converges faster than the generic rate, so
  // the slope check fails and the report is still written.
  const auto report = scratch() / "limit.json";
  r = run("limit-check --model p-spin --p 2 --beta 0.5 --h 0 --n-list 1000,10000,100000 --out " +
          report.string());
  CHECK(r.code == 3);
  CHECK(slurp(report).find("\"pass\": false") != std::string::npos);
}

TEST_CASE("config files and usage errors") {
  const auto cfg = scratch() / "run.ini";
  {
    std::ofstream f(cfg);
    f << "model = p-spin\np = 2\nbeta = 0.5\nh = 0\n[dist]\nn = 5\n";
  }
  auto r = run("--config " + cfg.string() + " dist");
  CHECK(r.code == 0);
  CHECK(r.out.find("\n5,1,") != std::string::npos);
  // Flags take precedence over the file.
  r = run("--config " + cfg.string() + " dist --beta 0");
  CHECK(r.out.find("0,0,0.031250000000000") != std::string::npos);

  {
    std::ofstream f(cfg);
    f << "bogus = 1\n";
  }
  CHECK(run("--config " + cfg.string() + " analyze --model cubic").code == 1);
  CHECK(run("--config /nonexistent/run.ini analyze --model cubic").code == 1);
  CHECK(run("analyze --model cubic --p 3").code == 1);
  CHECK(run("analyze --model nonsense").code == 1);
  CHECK(run("analyze --terms 1:x").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("analyze --format xml --model cubic").code == 1);
}

}  // TEST_SUITE
