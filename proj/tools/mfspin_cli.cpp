// Command-line front end. Talks to the library only through mfspin.h.
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfspin.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

enum Exit { ok = 0, usage = 1, failed = 2, slope = 3, hypothesis = 4 };

struct ModelArgs {
  std::string name;
  std::optional<double> p, beta, h, d;
  std::string terms;
};

struct Output {
  std::string format;
  std::string out;
};

struct CliError {
  int code;
  std::string message;
};

int exit_for(mfs_status s) {
  switch (s) {
    case MFS_OK: return ok;
    case MFS_E_HYPOTHESIS: return hypothesis;
    case MFS_E_INVALID_ARGUMENT: return usage;
    default: return failed;
  }
}

void check(mfs_status s) {
  if (s != MFS_OK)
    throw CliError{exit_for(s), std::string(mfs_status_name(s)) + ": " + mfs_last_error()};
}

std::string take(char* s) {
  std::string r = s ? s : "";
  mfs_string_free(s);
  return r;
}

void emit(const Output& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw CliError{usage, "cannot open " + o.out + " for writing"};
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError{usage, "cannot open " + path + " for writing"};
  f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw CliError{usage, "not a number: '" + s + "'"};
  return v;
}

// "lo:hi:count" or a comma list.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> g;
  if (spec.empty()) return g;
  const auto colon = split(spec, ':');
  if (colon.size() == 3) {
    const double lo = to_double(colon[0]), hi = to_double(colon[1]);
    const double cnt = to_double(colon[2]);
    if (cnt < 1 || cnt != static_cast<int>(cnt)) throw CliError{usage, "bad grid count in " + spec};
    const int c = static_cast<int>(cnt);
    for (int i = 0; i < c; ++i) g.push_back(c == 1 ? lo : lo + (hi - lo) * i / (c - 1));
    return g;
  }
  for (const auto& p : split(spec, ',')) g.push_back(to_double(p));
  return g;
}

std::vector<std::int64_t> parse_sizes(const std::string& spec) {
  std::vector<std::int64_t> ns;
  for (const auto& p : split(spec, ',')) {
    const double v = to_double(p);
    if (v != static_cast<double>(static_cast<std::int64_t>(v)))
      throw CliError{usage, "sizes must be integers: " + p};
    ns.push_back(static_cast<std::int64_t>(v));
  }
  return ns;
}

struct Params {
  std::vector<std::string> keys;
  std::vector<double> values;
  void add(const char* k, const std::optional<double>& v) {
    if (v) {
      keys.push_back(k);
      values.push_back(*v);
    }
  }
  std::vector<const char*> ptrs() const {
    std::vector<const char*> p;
    for (const auto& k : keys) p.push_back(k.c_str());
    return p;
  }
};

Params params_of(const ModelArgs& m) {
  Params p;
  p.add("p", m.p);
  p.add("beta", m.beta);
  p.add("h", m.h);
  p.add("d", m.d);
  return p;
}

struct Model {
  mfs_model* ptr = nullptr;
  ~Model() { mfs_model_destroy(ptr); }
};

void make_model(const ModelArgs& m, Model& model) {
  if (!m.terms.empty()) {
    if (!m.name.empty() && m.name != "inline")
      throw CliError{usage, "--terms cannot be combined with --model " + m.name};
    std::vector<double> coef;
    std::vector<int> pow;
    for (const auto& t : split(m.terms, ',')) {
      const auto cp = split(t, ':');
      if (cp.size() != 2) throw CliError{usage, "terms are coefficient:power pairs, got " + t};
      const double pw = to_double(cp[1]);
      if (pw != static_cast<int>(pw)) throw CliError{usage, "powers must be integers: " + t};
      coef.push_back(to_double(cp[0]));
      pow.push_back(static_cast<int>(pw));
    }
    check(mfs_model_create_terms(coef.data(), pow.data(), coef.size(), &model.ptr));
    return;
  }
  if (m.name.empty()) throw CliError{usage, "no model given (use --model or --terms)"};
  const Params p = params_of(m);
  const auto keys = p.ptrs();
  check(mfs_model_create(m.name.c_str(), keys.data(), p.values.data(), p.values.size(),
                         &model.ptr));
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string analyze_csv(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  std::string csv = "index,a,m,order,c,nu,value,weight\n";
  for (const auto& m : j.at("maximizers")) {
    csv += std::to_string(m.at("index").get<int>()) + "," + fmt17(m.at("a").get<double>()) +
           "," + std::to_string(m.at("m").get<int>()) + "," +
           std::to_string(m.at("order").get<int>()) + "," + fmt17(m.at("c").get<double>()) +
           "," + fmt17(m.at("nu").get<double>()) + "," + fmt17(m.at("value").get<double>()) +
           "," + fmt17(m.at("weight").get<double>()) + "\n";
  }
  return csv;
}

std::string phase_json(const std::string& csv) {
  const auto lines = split(csv, '\n');
  nlohmann::json rows = nlohmann::json::array();
  if (!lines.empty()) {
    const auto cols = split(lines[0], ',');
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto cells = split(lines[i], ',');
      nlohmann::json row;
      for (std::size_t c = 0; c < cols.size() && c < cells.size(); ++c) {
        try {
          std::size_t used = 0;
          const double v = std::stod(cells[c], &used);
          if (used == cells[c].size()) {
            row[cols[c]] = v;
            continue;
          }
        } catch (const std::exception&) {
        }
        row[cols[c]] = cells[c];
      }
      rows.push_back(row);
    }
  }
  nlohmann::json out = {{"schema_version", 1}, {"command", "phase"}, {"rows", rows}};
  return out.dump(2) + "\n";
}

void add_output(CLI::App* sub, Output& o, const char* default_format) {
  o.format = default_format;
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", o.out, "Output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetization laws, limit theorems and MLE for mean-field spin models"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Read key = value settings from a file; flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  ModelArgs model;
  app.add_option("--model", model.name, "p-spin, cubic, four-spin, six-spin or annealed");
  app.add_option("--p", model.p, "p-spin exponent");
  app.add_option("--beta", model.beta, "Interaction strength");
  app.add_option("--h", model.h, "Field or secondary coupling");
  app.add_option("--d", model.d, "Degree of the random regular graph (annealed)");
  app.add_option("--terms", model.terms, "Inline model as coefficient:power pairs, e.g. 0.5:2,0.1:1");

  Output o_an, o_dist, o_lim, o_mle, o_phase;

  auto* analyze = app.add_subcommand("analyze", "Maximizers of A = F + I and their constants");
  add_output(analyze, o_an, "json");

  std::int64_t dist_n = 0;
  double dist_delta = 0.0;
  std::string dist_summary;
  auto* dist = app.add_subcommand("dist", "Exact law of the magnetization at size n");
  dist->add_option("--n", dist_n, "System size")->required();
  dist->add_option("--delta", dist_delta, "Window radius (default: separation radius)");
  dist->add_option("--summary", dist_summary, "Also write the JSON summary to this path");
  add_output(dist, o_dist, "csv");

  std::string lim_ns;
  double lim_tol = 0.15;
  auto* limit = app.add_subcommand("limit-check", "Wasserstein rates of the conditional limit theorems");
  limit->add_option("--n-list", lim_ns, "Comma separated sizes (at least 3)")->required();
  limit->add_option("--tol", lim_tol, "Allowed slope deviation")->capture_default_str();
  add_output(limit, o_lim, "json");

  std::string mle_param = "h";
  std::int64_t mle_n = 10000, mle_reps = 2000;
  std::uint64_t mle_seed = kDefaultSeed;
  std::string mle_summary;
  auto* mle = app.add_subcommand("mle", "Monte Carlo study of the maximum likelihood estimator");
  mle->add_option("--param", mle_param, "Parameter to estimate")->capture_default_str();
  mle->add_option("--n", mle_n, "System size")->capture_default_str();
  mle->add_option("--reps", mle_reps, "Replicates")->capture_default_str();
  mle->add_option("--seed", mle_seed, "Random seed")->capture_default_str();
  mle->add_option("--summary", mle_summary, "With --format csv, also write the JSON summary here");
  add_output(mle, o_mle, "json");

  std::string beta_grid, h_grid;
  auto* phase = app.add_subcommand("phase", "Region labels and boundary curves on a grid");
  phase->add_option("--beta-grid", beta_grid, "lo:hi:count or comma list")->required();
  phase->add_option("--h-grid", h_grid, "lo:hi:count or comma list");
  add_output(phase, o_phase, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*phase) {
      if (model.name.empty()) throw CliError{usage, "phase needs --model"};
      Params p;
      p.add("p", model.p);
      p.add("d", model.d);
      const auto keys = p.ptrs();
      const auto betas = parse_grid(beta_grid);
      const auto hs = parse_grid(h_grid);
      char* csv = nullptr;
      check(mfs_phase(model.name.c_str(), keys.data(), p.values.data(), p.values.size(),
                      betas.data(), betas.size(), hs.data(), hs.size(), &csv));
      const std::string text = take(csv);
      emit(o_phase, o_phase.format == "csv" ? text : phase_json(text));
      return ok;
    }

    Model m;
    make_model(model, m);

    if (*analyze) {
      char* json = nullptr;
      check(mfs_analyze(m.ptr, &json));
      const std::string text = take(json);
      emit(o_an, o_an.format == "json" ? text : analyze_csv(text));
      return ok;
    }
    if (*dist) {
      if (dist_n < 1 || dist_n > 10'000'000)
        throw CliError{failed, "n must be between 1 and 1e7"};
      char *csv = nullptr, *json = nullptr;
      check(mfs_dist(m.ptr, dist_n, dist_delta, &csv, &json));
      const std::string c = take(csv), j = take(json);
      emit(o_dist, o_dist.format == "csv" ? c : j);
      write_file(dist_summary, j);
      return ok;
    }
    if (*limit) {
      const auto ns = parse_sizes(lim_ns);
      if (ns.size() < 3) throw CliError{usage, "--n-list needs at least 3 sizes"};
      for (auto n : ns)
        if (n < 1 || n > 10'000'000) throw CliError{failed, "sizes must be between 1 and 1e7"};
      char *csv = nullptr, *json = nullptr;
      int pass = 0;
      check(mfs_limit_check(m.ptr, ns.data(), ns.size(), lim_tol, &csv, &json, &pass));
      const std::string c = take(csv), j = take(json);
      emit(o_lim, o_lim.format == "csv" ? c : j);
      if (!pass) {
        std::cerr << "slope check failed; see report\n";
        return slope;
      }
      return ok;
    }
    if (*mle) {
      if (mle_reps < 1) throw CliError{usage, "--reps must be at least 1"};
      if (mle_n < 1 || mle_n > 10'000'000) throw CliError{failed, "n must be between 1 and 1e7"};
      char *csv = nullptr, *json = nullptr;
      check(mfs_mle(m.ptr, mle_param.c_str(), mle_n, mle_reps, mle_seed, &csv, &json));
      const std::string c = take(csv), j = take(json);
      emit(o_mle, o_mle.format == "csv" ? c : j);
      write_file(mle_summary, j);
      return ok;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
  return usage;
}
