#include "pcgauge/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace pcgauge::cli {
namespace {

json triad_json(const std::optional<Triad>& t) {
  if (!t) return nullptr;
  return json::array({t->i, t->j, t->k});
}

PCMatrix read_matrix(const CommandConfig& cfg) {
  if (cfg.inputs.empty()) throw Error("missing matrix file");
  const std::filesystem::path path = cfg.inputs.front();
  PCMatrix a = [&] {
    if (cfg.format == "csv" && path.extension() != ".csv") {
      std::ifstream in(path);
      if (!in) throw ParseError("cannot open " + path.string());
      return matrix_from_csv(in);
    }
    return load_matrix(path);
  }();
  if (cfg.group && Group::parse(*cfg.group) != a.group()) {
    throw Error("group mismatch: file holds " + a.group().tag() + ", --group says " + *cfg.group);
  }
  return a;
}

json violations_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back({{"i", v.i}, {"j", v.j}, {"axiom", v.axiom}});
  return out;
}

bool use_csv(const CommandConfig& cfg, const std::filesystem::path& path) {
  return cfg.format == "csv" || path.extension() == ".csv";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

PathSpec parse_loop(const std::string& s) {
  PathSpec loop;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error("--loop expects comma-separated vertex indices");
    }
    loop.push_back(v);
  }
  return loop;
}

}  // namespace

SimplicialComplex2 load_complex(const std::string& source) {
  const auto generator = [&](std::string_view prefix) -> std::optional<std::size_t> {
    if (!std::string_view(source).starts_with(prefix)) return std::nullopt;
    std::size_t n = 0;
    const char* first = source.data() + prefix.size();
    const auto [ptr, ec] = std::from_chars(first, source.data() + source.size(), n);
    if (ec != std::errc() || ptr != source.data() + source.size()) {
      throw Error("bad complex generator '" + source + "'");
    }
    return n;
  };
  if (auto n = generator("simplex:")) return SimplicialComplex2::full_simplex(*n);
  if (auto m = generator("grid:")) return SimplicialComplex2::grid(*m);
  return complex_from_json(read_json_file(source));
}

CommandOutcome cmd_check(const CommandConfig& cfg) {
  const PCMatrix a = read_matrix(cfg);
  const Group& g = a.group();
  json report{{"valid", true}, {"group", g.tag()}, {"n", a.size()},
              {"variance", to_string(a.variance())}};
  const auto violations = validate(a);
  if (!violations.empty()) {
    report["valid"] = false;
    report["violations"] = violations_json(violations);
    return {kInvalid, report};
  }
  const bool gaps = !a.gap_free();
  report["gaps"] = gaps;
  const ConsistencyReport cons =
      gaps ? is_consistent_where_defined(a, cfg.tol) : is_consistent(a, cfg.tol);
  report["consistent"] = cons.consistent;
  report["worst_deviation"] = cons.worst_deviation;
  report["witness"] = triad_json(cons.witness);
  if (g.kind() == GroupKind::RPlus && !gaps) {
    const IndicatorValue k = ii3_matrix(a);
    report["ii3"] = k.value;
    report["ii3_triad"] = triad_json(k.worst);
    report["ii_n"] = ii_n_chain(a);
  }
  const IndicatorValue in = ii_indicator_where_defined(a);
  report["ii_In"] = in.value;
  report["worst_triad"] = triad_json(in.worst);
  // On rplus the neighbourhood is measured on the ii3 scale.
  const IndicatorMap eps_map =
      g.kind() == GroupKind::RPlus ? ii3_scale_indicator() : default_indicator();
  if (cfg.epsilon < 0.0) throw Error("epsilon must be non-negative");
  report["epsilon"] = cfg.epsilon;
  report["in_epsilon_neighborhood"] = ii_indicator_where_defined(a, eps_map).value < cfg.epsilon;
  return {cons.consistent ? kOk : kInconsistent, report};
}

CommandOutcome cmd_consistencize(const CommandConfig& cfg) {
  const PCMatrix a = read_matrix(cfg);
  const auto violations = validate(a);
  if (!violations.empty()) {
    return {kInvalid, json{{"valid", false}, {"violations", violations_json(violations)}}};
  }
  const GroupKind kind = a.group().kind();
  std::string method = cfg.method;
  if (method.empty()) {
    method = (kind == GroupKind::RPlus || kind == GroupKind::U1) ? "abelian" : "riemannian";
  }
  ConsistencizationResult r = [&] {
    if (method == "abelian") return consistencize_abelian(a);
    if (method == "riemannian") {
      DescentOptions opts;
      opts.max_iter = cfg.max_iter;
      return consistencize_riemannian(a, opts);
    }
    throw Error("unknown method '" + method + "'");
  }();
  if (cfg.out) {
    if (use_csv(cfg, *cfg.out)) {
      std::ostringstream csv;
      matrix_to_csv(csv, r.consistent);
      write_text(*cfg.out, csv.str());
    } else {
      write_text(*cfg.out, matrix_to_json(r.consistent).dump(2) + "\n");
    }
  }
  json report{{"method", method}};
  report.update(result_to_json(r));
  return {kOk, report};
}

CommandOutcome cmd_holonomy(const CommandConfig& cfg) {
  if (cfg.inputs.size() != 2) throw Error("holonomy expects a complex and a field");
  const SimplicialComplex2 k = load_complex(cfg.inputs[0]);
  const EdgeField f = field_from_json(read_json_file(cfg.inputs[1]));
  if (cfg.group && Group::parse(*cfg.group) != f.group()) {
    throw Error("group mismatch: field holds " + f.group().tag() + ", --group says " + *cfg.group);
  }
  f.check_against(k);
  const PCMatrix a = holonomy_pc_matrix(k, f);
  const IndicatorMap in = default_indicator();
  json curvature = json::array();
  for (const auto& t : k.triangles()) {
    curvature.push_back({{"triangle", triad_json(t)},
                         {"In", in(f.group(), triangle_curvature(k, f, t))}});
  }
  const GlobalIndicator gi = global_ii(k, f, in);
  const ConsistencyReport cons = is_consistent_where_defined(a, cfg.tol);
  json report{{"group", f.group().tag()},
              {"matrix", matrix_to_json(a)},
              {"curvature", std::move(curvature)},
              {"global_ii", gi.value},
              {"worst_triangle", triad_json(gi.worst)},
              {"consistent_on_complete_triads", cons.consistent}};
  if (gi.no_triangles) report["note"] = "no 2-simplices";
  return {gi.value <= cfg.tol ? kOk : kInconsistent, report};
}

CommandOutcome cmd_montecarlo(const CommandConfig& cfg) {
  if (!cfg.group) throw Error("--group is required");
  const Group group = Group::parse(*cfg.group);
  if (!group.compact()) throw Error("no normalized Haar measure");
  std::vector<double> values;
  std::string observable;
  if (cfg.random_pc) {
    if (!cfg.inputs.empty()) throw Error("give either a complex or --random-pc, not both");
    observable = cfg.observable.empty() ? "ii3_of_random_matrix" : cfg.observable;
    if (parse_observable(observable) != ObservableKind::Ii3OfRandomMatrix) {
      throw Error("--random-pc only supports ii3_of_random_matrix");
    }
    values = ii_distribution(group, *cfg.random_pc, cfg.samples, cfg.seed, default_indicator(),
                             cfg.workers)
                 .values;
  } else {
    if (cfg.inputs.size() != 1) throw Error("montecarlo expects one complex (or --random-pc n)");
    const SimplicialComplex2 k = load_complex(cfg.inputs[0]);
    Observable obs;
    obs.kind = parse_observable(cfg.observable.empty() ? "mean_curvature_In" : cfg.observable);
    if (cfg.loop) obs.loop = parse_loop(*cfg.loop);
    observable = to_string(obs.kind);
    values = observable_samples(k, group, obs, cfg.samples, cfg.seed, cfg.workers);
  }
  const MCEstimate est = summarize(values, cfg.seed, observable);
  json report = estimate_to_json(est, group);
  const Histogram h = make_histogram(values);
  if (cfg.random_pc) report["histogram"] = histogram_to_json(h);
  if (cfg.histogram) {
    std::ostringstream csv;
    histogram_to_csv(csv, h);
    write_text(*cfg.histogram, csv.str());
  }
  return {kOk, report};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Group-valued pairwise comparison matrices, inconsistency and lattice holonomy"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "group tag: rplus, u1, su2, zmod:<m>");
    sub->add_option("--tol", cfg.tol, "consistency tolerance")->capture_default_str();
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--format", cfg.format, "matrix format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "validate a matrix and report its inconsistency");
  check->add_option("matrix", cfg.inputs, "matrix file (.json or .csv)")->required();
  check->add_option("--epsilon", cfg.epsilon, "neighbourhood radius")->capture_default_str();
  common(check);

  auto* cons = app.add_subcommand("consistencize", "replace a matrix by a nearby consistent one");
  cons->add_option("matrix", cfg.inputs, "matrix file (.json or .csv)")->required();
  cons->add_option("--method", cfg.method, "abelian | riemannian")
      ->check(CLI::IsMember({"abelian", "riemannian"}));
  cons->add_option("--max-iter", cfg.max_iter, "descent iteration cap")->capture_default_str();
  common(cons);

  auto* hol = app.add_subcommand("holonomy", "PC matrix and curvature of an edge field");
  hol->add_option("inputs", cfg.inputs, "complex (file, simplex:<n> or grid:<m>) and field file")
      ->required()
      ->expected(2);
  common(hol);

  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo expectation under product Haar measure");
  mc->add_option("complex", cfg.inputs, "complex (file, simplex:<n> or grid:<m>)");
  mc->add_option("--random-pc", cfg.random_pc, "sample random n x n PC matrices instead");
  mc->add_option("--observable", cfg.observable,
                 "mean_curvature_In | sup_curvature_In | wilson_character | ii3_of_random_matrix");
  mc->add_option("-N,--samples", cfg.samples, "number of samples")->capture_default_str();
  mc->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  mc->add_option("--workers", cfg.workers, "worker threads (does not change results)")
      ->capture_default_str();
  mc->add_option("--loop", cfg.loop, "wilson loop as comma-separated vertices");
  mc->add_option("--histogram", cfg.histogram, "write a CSV histogram here");
  common(mc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  CommandOutcome outcome;
  try {
    if (*check) {
      outcome = cmd_check(cfg);
    } else if (*cons) {
      outcome = cmd_consistencize(cfg);
    } else if (*hol) {
      outcome = cmd_holonomy(cfg);
    } else {
      outcome = cmd_montecarlo(cfg);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    outcome = {kInvalid, json{{"error", e.what()}}};
  }
  const std::string text = outcome.report.dump(2) + "\n";
  out << text;
  if (cfg.out && !*cons && outcome.exit_code != kInvalid) write_text(*cfg.out, text);
  return outcome.exit_code;
}

}  // namespace pcgauge::cli
