// defring: emit, count, classify and check definable sets over finite rings.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "defring/checks.hpp"
#include "defring/classify.hpp"
#include "defring/errors.hpp"
#include "defring/registry.hpp"
#include "defring/sexpr.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace defring;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;

std::optional<bool> parse_glreg(const std::string& glreg) {
  if (glreg.empty()) return std::nullopt;
  if (glreg == "on") return true;
  if (glreg == "off") return false;
  throw config_error("--glreg must be 'on' or 'off'");
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw config_error("cannot open output file '" + out + "'");
  f << text;
}

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

int cmd_emit(const std::string& set_name, const std::string& format,
             const std::string& out, const std::string& glreg) {
  registry::NamedSet ns = registry::resolve_set(set_name, parse_glreg(glreg));
  std::string text = sexpr::to_sexpr(ns.set) + "\n";
  lang::FormulaStats st = lang::formula_stats(ns.set.body);
  if (format == "sexpr") {
    write_output(out, text);
    std::cerr << "free-vars: " << ns.set.sig.size() << "\nquantifiers: " << st.quantifiers
              << "\nnodes: " << st.nodes << "\n";
  } else if (format == "json") {
    json rec;
    rec["set"] = set_name;
    rec["sexpr"] = text;
    rec["stats"] = {{"free_vars", ns.set.sig.size()},
                    {"quantifiers", st.quantifiers},
                    {"nodes", st.nodes}};
    write_output(out, rec.dump(2) + "\n");
  } else {
    throw config_error("--format must be 'sexpr' or 'json'");
  }
  return 0;
}

interp::EvalOptions make_opts(const std::string& strategy, long long budget,
                              const registry::NamedSet& ns) {
  interp::EvalOptions opts;
  opts.budget = budget;
  if (strategy == "guided" || strategy == "both") {
    opts.strategy = interp::Strategy::Guided;
    opts.hints = &ns.ctx->hints;
  } else if (strategy != "naive") {
    throw config_error("--strategy must be naive, guided or both");
  }
  return opts;
}

int cmd_count(const std::string& set_name, const std::string& structure,
              const std::string& mode, uint64_t seed, size_t samples, long long budget,
              const std::string& strategy, const std::string& out,
              const std::string& glreg) {
  interp::Structure s = interp::make_structure(structure);
  registry::NamedSet ns = registry::resolve_set(set_name, parse_glreg(glreg));
  interp::EvalOptions opts = make_opts(strategy, budget, ns);

  json rec;
  rec["set"] = set_name;
  rec["structure"] = structure;
  rec["mode"] = mode;
  double t0 = now_seconds();
  if (mode == "exhaustive") {
    interp::CountResult r = interp::count_points(s, ns.set, opts);
    if (strategy == "both") {
      interp::EvalOptions naive;
      naive.budget = budget;
      interp::CountResult r2 = interp::count_points(s, ns.set, naive);
      if (r2.count != r.count)
        throw partition_error("strategies disagree on the exhaustive count");
    }
    rec["count"] = r.count;
  } else if (mode == "sample") {
    interp::CountResult r = interp::count_sample(s, ns.set, samples, seed, opts);
    double total = 1.0;
    for (size_t i = 0; i < ns.set.sig.size(); ++i) total *= s.size;
    double p = samples == 0 ? 0.0 : static_cast<double>(r.hits) / samples;
    rec["samples"] = samples;
    rec["hits"] = r.hits;
    rec["estimate"] = p * total;
    rec["stderr"] = samples == 0 ? 0.0 : total * std::sqrt(p * (1 - p) / samples);
    rec["seed"] = seed;
  } else {
    throw config_error("--mode must be 'exhaustive' or 'sample'");
  }
  rec["elapsed"] = now_seconds() - t0;
  write_output(out, rec.dump(2) + "\n");
  return 0;
}

std::vector<classify::TriplePoint> load_points(const std::string& path,
                                               const interp::Structure& s) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open point file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw config_error(std::string("point file parse error: ") + e.what());
  }
  if (!doc.is_array()) throw config_error("point file must hold a JSON array");
  auto to_mat = [&](const json& m, const char* label) {
    if (!m.is_array()) throw config_error(std::string(label) + " must be an array of rows");
    size_t rows = m.size();
    size_t cols = rows == 0 ? 0 : m[0].size();
    oracle::Mtx<uint16_t> out(rows, cols, 0);
    for (size_t i = 0; i < rows; ++i) {
      if (!m[i].is_array() || m[i].size() != cols)
        throw config_error(std::string(label) + " rows are ragged");
      for (size_t j = 0; j < cols; ++j) {
        if (!m[i][j].is_number_integer())
          throw config_error(std::string(label) + " entries must be integers");
        out.at(i, j) = s.from_int(m[i][j].get<long long>());
      }
    }
    return out;
  };
  std::vector<classify::TriplePoint> pts;
  for (const json& rec : doc) {
    classify::TriplePoint p;
    p.x = to_mat(rec.at("X"), "X");
    p.y = to_mat(rec.at("Y"), "Y");
    p.z = to_mat(rec.at("Z"), "Z");
    pts.push_back(std::move(p));
  }
  return pts;
}

int cmd_classify(const std::string& triple, const std::string& structure,
                 const std::string& point_file, const std::string& strategy,
                 long long budget, const std::string& format, const std::string& out,
                 const std::string& glreg) {
  lie::TripleSpec t = lie::parse_triple(triple);
  bool g = parse_glreg(glreg).value_or(transfer::default_glreg(t));
  interp::Structure s = interp::make_structure(structure);
  std::vector<classify::TriplePoint> pts = load_points(point_file, s);

  auto run = [&](const classify::TriplePoint& p, interp::Strategy st) {
    return classify::classify_point(s, t, p, g, st, budget);
  };
  std::vector<int> sigmas;
  for (const classify::TriplePoint& p : pts) {
    int sigma;
    if (strategy == "naive") {
      sigma = run(p, interp::Strategy::Naive);
    } else if (strategy == "guided") {
      sigma = run(p, interp::Strategy::Guided);
    } else if (strategy == "both") {
      sigma = run(p, interp::Strategy::Guided);
      if (run(p, interp::Strategy::Naive) != sigma)
        throw partition_error("strategies disagree at point " +
                              std::to_string(sigmas.size()));
    } else {
      throw config_error("--strategy must be naive, guided or both");
    }
    sigmas.push_back(sigma);
  }

  std::ostringstream os;
  if (format == "csv") {
    os << "index,sigma,strategy\n";
    for (size_t i = 0; i < sigmas.size(); ++i)
      os << i << "," << sigmas[i] << "," << strategy << "\n";
  } else if (format == "json") {
    json arr = json::array();
    for (size_t i = 0; i < sigmas.size(); ++i)
      arr.push_back({{"index", i}, {"sigma", sigmas[i]}, {"strategy", strategy}});
    os << arr.dump(2) << "\n";
  } else {
    throw config_error("--format must be 'csv' or 'json'");
  }
  write_output(out, os.str());
  return 0;
}

int cmd_check(const std::string& suite, uint64_t seed, const std::string& out) {
  std::vector<std::string> names =
      suite == "all" ? checks::suite_names() : std::vector<std::string>{suite};
  std::ostringstream os;
  bool all_pass = true;
  for (const std::string& name : names) {
    checks::CheckReport rep = checks::run_suite(name, seed);
    all_pass = all_pass && rep.passed;
    os << (rep.passed ? "PASS" : "FAIL") << " " << rep.name << "\n";
    for (const std::string& line : rep.lines) os << "  " << line << "\n";
  }
  write_output(out, os.str());
  return all_pass ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"definable transfer-factor sets over finite rings"};
  app.require_subcommand(1);

  std::string set_name, triple, structure, mode = "exhaustive", out, glreg;
  std::string emit_format = "sexpr", cls_format = "csv";
  std::string count_strategy = "naive", cls_strategy = "guided";
  std::string point_file, suite;
  uint64_t seed = 1;
  size_t samples = 1000;
  long long budget = -1;

  CLI::App* emit = app.add_subcommand("emit", "serialize a catalog set");
  emit->add_option("--set", set_name, "set name")->required();
  emit->add_option("--format", emit_format, "sexpr|json");
  emit->add_option("--out", out, "output path (default stdout)");
  emit->add_option("--glreg", glreg, "on|off gl-regularity conjunct");

  CLI::App* count = app.add_subcommand("count", "count the points of a set");
  count->add_option("--set", set_name, "set name")->required();
  count->add_option("--structure", structure, "structure spec")->required();
  count->add_option("--mode", mode, "exhaustive|sample");
  count->add_option("--seed", seed, "sampling seed");
  count->add_option("--samples", samples, "sample size");
  count->add_option("--budget", budget, "evaluation budget (-1: default)");
  count->add_option("--strategy", count_strategy, "naive|guided|both");
  count->add_option("--out", out, "output path (default stdout)");
  count->add_option("--glreg", glreg, "on|off gl-regularity conjunct");

  CLI::App* cls = app.add_subcommand("classify", "classify triple points");
  cls->add_option("--triple", triple, "triple name")->required();
  cls->add_option("--structure", structure, "structure spec")->required();
  cls->add_option("--points", point_file, "JSON point file")->required();
  cls->add_option("--strategy", cls_strategy, "naive|guided|both");
  cls->add_option("--budget", budget, "evaluation budget (-1: default)");
  cls->add_option("--format", cls_format, "csv|json");
  cls->add_option("--out", out, "output path (default stdout)");
  cls->add_option("--glreg", glreg, "on|off gl-regularity conjunct");

  CLI::App* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("--suite", suite, "suite name or 'all'")->required();
  check->add_option("--seed", seed, "suite seed");
  check->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (emit->parsed()) return cmd_emit(set_name, emit_format, out, glreg);
    if (count->parsed())
      return cmd_count(set_name, structure, mode, seed, samples, budget, count_strategy,
                       out, glreg);
    if (cls->parsed())
      return cmd_classify(triple, structure, point_file, cls_strategy, budget, cls_format,
                          out, glreg);
    if (check->parsed()) return cmd_check(suite, seed, out);
  } catch (const budget_error& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const partition_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
