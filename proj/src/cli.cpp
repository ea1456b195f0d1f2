#include "degseq/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "degseq/asymptotics.hpp"
#include "degseq/degree_sequence.hpp"
#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "degseq/graphical.hpp"
#include "degseq/models.hpp"
#include "degseq/operators.hpp"
#include "degseq/parallel.hpp"

namespace degseq::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct SeqOpts {
  std::string seq;
  std::string seq_file;

  DegreeSequence get() const {
    if (!seq.empty()) return DegreeSequence::parse(seq);
    if (!seq_file.empty()) return DegreeSequence::from_file(seq_file);
    throw ParseError("a degree sequence is required (--seq or --seq-file)");
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--seq", seq, "degree sequence, comma separated (e.g. 3,3,3,3)");
    cmd->add_option("--seq-file", seq_file, "file with one integer per line");
  }
};

struct ConstraintOpts {
  std::vector<std::string> forbid;
  std::vector<std::string> force;

  void attach(CLI::App* cmd) {
    cmd->add_option("--forbid", forbid, "forbidden pair a-b (repeatable)");
    cmd->add_option("--force", force, "forced pair a-b (repeatable)");
  }

  PairConstraint get(int n) const {
    PairConstraint c(n);
    auto parse_pair = [](const std::string& s) {
      auto dash = s.find('-');
      if (dash == std::string::npos) throw ParseError("pair must look like a-b: " + s);
      return std::make_pair(std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1)));
    };
    for (const auto& s : forbid) {
      auto [a, b] = parse_pair(s);
      c.forbid(a, b);
    }
    for (const auto& s : force) {
      auto [a, b] = parse_pair(s);
      c.force(a, b);
    }
    return c;
  }
};

json rat_json(const Rat& r) {
  json j;
  j["num"] = numer(r).str();
  j["den"] = denom(r).str();
  j["value"] = to_double(r);
  return j;
}

json envelope_json(const ErrorEnvelope& e) {
  json j;
  j["eta1"] = e.eta1;
  j["eta2"] = e.eta2;
  j["xi"] = e.xi;
  j["delta"] = e.delta;
  j["eps"] = e.eps;
  if (e.thm_error) j["thm_error"] = *e.thm_error;
  return j;
}

void emit_report(std::ostream& out, const std::string& sub, const json& config, const json& result,
                 std::uint64_t seed, std::uint64_t wall_ms) {
  json rep;
  rep["subcommand"] = sub;
  rep["config"] = config;
  rep["result"] = result;
  rep["provenance"] = {{"version", kVersion}, {"seed", seed}, {"wall_ms", wall_ms}};
  out << rep.dump() << "\n";
}

ModelSpec model_from(const std::string& kind, int n, long long m, double p, std::uint64_t seed) {
  ModelSpec spec;
  spec.kind = model_kind_from_string(kind);
  spec.n = n;
  spec.m = m;
  spec.p = p;
  spec.seed = seed;
  spec.validate();
  return spec;
}

json histogram_json(const Histogram& h) {
  json j = json::array();
  for (const auto& [key, cnt] : h.counts) {
    json row;
    row["key"] = key;
    row["count"] = cnt;
    j.push_back(row);
  }
  return j;
}

double actual_spread(const DegreeSequence& d) {
  double dbar = static_cast<double>(d.m1()) / d.n();
  if (dbar <= 0) return 0.0;
  double worst = 0;
  for (int i = 0; i < d.n(); ++i) worst = std::max(worst, std::fabs(d[i] - dbar));
  return worst / dbar;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// `experiment` replays recipes through dispatch, so it needs the declaration
// above.
int run_experiment(const std::string& recipe_path, const std::string& out_dir, std::ostream& out) {
  std::ifstream in(recipe_path);
  if (!in) throw ParseError("cannot open recipe: " + recipe_path);
  json recipe = json::parse(in, nullptr, true);
  std::optional<std::uint64_t> shared_seed;
  json runs = json::array();
  if (recipe.is_array()) {
    runs = recipe;
  } else {
    if (recipe.contains("seed")) shared_seed = recipe["seed"].get<std::uint64_t>();
    if (recipe.contains("runs")) runs = recipe["runs"];
  }
  std::filesystem::create_directories(out_dir);
  json manifest = json::array();
  int idx = 0;
  for (const auto& entry : runs) {
    std::vector<std::string> sub_args = entry.at("args").get<std::vector<std::string>>();
    std::string name = entry.contains("name") ? entry["name"].get<std::string>()
                                              : "run" + std::to_string(idx);
    if (shared_seed) {
      bool has_seed = false;
      for (const auto& a : sub_args)
        if (a == "--seed") has_seed = true;
      if (!has_seed) {
        sub_args.push_back("--seed");
        sub_args.push_back(std::to_string(*shared_seed));
      }
    }
    char fname[32];
    std::snprintf(fname, sizeof(fname), "%03d_", idx);
    std::string file = std::string(fname) + name + ".json";
    std::ostringstream sub_out, sub_err;
    int code = 1;
    try {
      code = dispatch(sub_args, sub_out, sub_err);
    } catch (const std::exception& e) {
      sub_err << e.what();
    }
    std::ofstream of(std::filesystem::path(out_dir) / file);
    of << sub_out.str();
    json m;
    m["name"] = name;
    m["args"] = sub_args;
    m["exit"] = code;
    m["status"] = (code == 0) ? "ok" : "error";
    m["file"] = file;
    if (code != 0) m["error"] = sub_err.str();
    manifest.push_back(m);
    ++idx;
  }
  std::ofstream mf(std::filesystem::path(out_dir) / "manifest.json");
  mf << manifest.dump(2) << "\n";
  json result;
  result["runs"] = manifest.size();
  result["out_dir"] = out_dir;
  int failures = 0;
  for (const auto& m : manifest)
    if (m["status"] != "ok") ++failures;
  result["failures"] = failures;
  out << result.dump() << "\n";
  return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact and asymptotic counting of graphs by degree sequence"};
  app.require_subcommand(1);

  int threads = 0;  // 0 = DEGSEQ_THREADS or hardware default
  app.add_option("--threads", threads, "worker threads (default: env/hardware)");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "RNG seed (sampling subcommands)");
  auto nthreads = [&]() { return threads > 0 ? threads : default_threads(); };

  // --- count / prob / pathprob / ratio ------------------------------------
  SeqOpts count_seq, prob_seq, path_seq, ratio_seq, graph_seq, asym_seq;
  ConstraintOpts count_c, prob_c, path_c, ratio_c;
  int cap = Oracle::kDefaultCap;
  std::vector<int> pair_opt, triple_opt;

  CLI::App* c_count = app.add_subcommand("count", "exact number of realisations N(d)");
  count_seq.attach(c_count);
  count_c.attach(c_count);
  c_count->add_option("--cap", cap, "exact-mode vertex cap");

  CLI::App* c_prob = app.add_subcommand("prob", "exact edge probability P_av(d)");
  prob_seq.attach(c_prob);
  prob_c.attach(c_prob);
  c_prob->add_option("--pair", pair_opt, "vertices a,v")->expected(2)->delimiter(',');
  c_prob->add_option("--cap", cap, "exact-mode vertex cap");

  CLI::App* c_path = app.add_subcommand("pathprob", "exact path probability P_avb(d)");
  path_seq.attach(c_path);
  path_c.attach(c_path);
  c_path->add_option("--triple", triple_opt, "vertices a,v,b")->expected(3)->delimiter(',');
  c_path->add_option("--cap", cap, "exact-mode vertex cap");

  CLI::App* c_ratio = app.add_subcommand("ratio", "exact count ratio R_ab(d)");
  ratio_seq.attach(c_ratio);
  ratio_c.attach(c_ratio);
  c_ratio->add_option("--pair", pair_opt, "vertices a,b")->expected(2)->delimiter(',');
  c_ratio->add_option("--cap", cap, "exact-mode vertex cap");

  // --- graphical ------------------------------------------------------------
  std::string gr_mode = "eg";
  CLI::App* c_graph = app.add_subcommand("graphical", "Erdos-Gallai / Koren graphicality test");
  graph_seq.attach(c_graph);
  c_graph->add_option("--mode", gr_mode, "eg | koren | both")
      ->check(CLI::IsMember({"eg", "koren", "both"}));

  // --- asym -------------------------------------------------------------
  std::string formula, variant = "section7";
  double eps_a = 0, eps_b = 0, mu_par = 0, sigma2_par = 0, dbar_par = 0, alpha = 0, eps_par = -1;
  int reg_n = 0, reg_d = 0, k0_opt = 0;
  CLI::App* c_asym = app.add_subcommand("asym", "closed-form formula evaluators");
  asym_seq.attach(c_asym);
  c_asym->add_option("--formula", formula,
                     "binom | h | conj | regular | pgr | rgr | pi | rho | edge | sparse | sparse_ratio")
      ->required()
      ->check(CLI::IsMember({"binom", "h", "conj", "regular", "pgr", "rgr", "pi", "rho", "edge",
                             "sparse", "sparse_ratio"}));
  c_asym->add_option("--pair", pair_opt, "vertices a,b")->expected(2)->delimiter(',');
  c_asym->add_option("--n", reg_n, "n for the regular formula / pi / rho");
  c_asym->add_option("--d", reg_d, "degree for the regular formula");
  c_asym->add_option("--variant", variant, "pi/rho variant")
      ->check(CLI::IsMember({"section7", "appendixA"}));
  c_asym->add_option("--eps-a", eps_a, "pi/rho parameter eps_a");
  c_asym->add_option("--eps-b", eps_b, "pi/rho parameter eps_v or eps_b");
  c_asym->add_option("--mu", mu_par, "pi/rho parameter mu");
  c_asym->add_option("--sigma2", sigma2_par, "pi/rho parameter sigma^2");
  c_asym->add_option("--dbar", dbar_par, "pi/rho parameter dbar");
  c_asym->add_option("--k0", k0_opt, "envelope truncation depth (0 = infinity)");
  c_asym->add_option("--alpha", alpha, "envelope spread exponent");
  c_asym->add_option("--eps", eps_par, "envelope relative spread (default: actual spread)");

  // --- fixpoint -----------------------------------------------------------
  std::string fp_root, fp_init = "pgr", fp_format = "json";
  int fp_k0 = 1, fp_steps = 1;
  long long fp_radius = -1;
  double fp_scale = 1.0;
  CLI::App* c_fix = app.add_subcommand("fixpoint", "iterate the compositional operator C");
  c_fix->add_option("--root", fp_root, "root degree sequence")->required();
  c_fix->add_option("--k0", fp_k0, "truncation depth");
  c_fix->add_option("--steps", fp_steps, "number of C applications");
  c_fix->add_option("--init", fp_init, "pgr | pi | exact")
      ->check(CLI::IsMember({"pgr", "pi", "exact"}));
  c_fix->add_option("--radius", fp_radius, "Omega^(0) L1 radius (default: steps*(2k0+2)+2)");
  c_fix->add_option("--scale", fp_scale, "multiply the initial function by this factor");
  c_fix->add_option("--format", fp_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  c_fix->add_option("--cap", cap, "exact-mode vertex cap (init=exact)");

  // --- sample ----------------------------------------------------------
  std::string s_model, s_out;
  int s_n = 0;
  long long s_m = -1;
  double s_p = -1;
  std::size_t s_count = 1;
  CLI::App* c_sample = app.add_subcommand("sample", "draw degree sequences from a random model");
  c_sample->add_option("--model", s_model, "gnm | gnp | bp | bm | ep | ep_prime | bhatp")->required();
  c_sample->add_option("--n", s_n, "number of vertices")->required();
  c_sample->add_option("--m", s_m, "edge count (gnm, bm)");
  c_sample->add_option("--p", s_p, "edge probability (gnp, bp, ep, ep_prime, bhatp)");
  c_sample->add_option("--count", s_count, "number of draws");
  c_sample->add_option("--out", s_out, "write JSONL here instead of stdout");

  // --- compare -----------------------------------------------------------
  std::string cm_a, cm_b, cm_stat = "median";
  int cm_n = 0, cm_boot = 200;
  long long cm_ma = -1, cm_mb = -1;
  double cm_pa = -1, cm_pb = -1;
  std::size_t cm_count = 10000;
  std::uint64_t cm_seed_b = 0;
  bool cm_seed_b_set = false;
  CLI::App* c_cmp = app.add_subcommand("compare", "TV distance on a statistic between two models");
  c_cmp->add_option("--model-a", cm_a)->required();
  c_cmp->add_option("--model-b", cm_b)->required();
  c_cmp->add_option("--n", cm_n)->required();
  c_cmp->add_option("--m-a", cm_ma);
  c_cmp->add_option("--m-b", cm_mb);
  c_cmp->add_option("--p-a", cm_pa);
  c_cmp->add_option("--p-b", cm_pb);
  c_cmp->add_option("--stat", cm_stat, "full | d1 | max | median | N<k>");
  c_cmp->add_option("--count", cm_count, "samples per model");
  c_cmp->add_option("--seed-b", cm_seed_b, "seed for model b (default: same seed)")
      ->each([&](const std::string&) { cm_seed_b_set = true; });
  c_cmp->add_option("--bootstrap", cm_boot, "bootstrap iterations for the half-width");
  std::string cm_format = "json";
  c_cmp->add_option("--format", cm_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  // --- concentration -------------------------------------------------------
  std::string cc_model = "gnm";
  int cc_n = 0;
  long long cc_m = 0;
  double cc_alpha = 0.5;
  std::size_t cc_count = 10000;
  CLI::App* c_conc = app.add_subcommand("concentration", "sigma^2 concentration experiment");
  c_conc->add_option("--model", cc_model, "gnm | bm");
  c_conc->add_option("--n", cc_n)->required();
  c_conc->add_option("--m", cc_m)->required();
  c_conc->add_option("--alpha", cc_alpha);
  c_conc->add_option("--count", cc_count);
  std::string cc_format = "json";
  c_conc->add_option("--format", cc_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  // --- table ------------------------------------------------------------
  int tb_n = 0;
  long long tb_m = 0;
  std::string tb_format = "json";
  CLI::App* c_table = app.add_subcommand("table", "exact vs formula over all classes with M1=2m");
  c_table->add_option("--n", tb_n)->required();
  c_table->add_option("--m", tb_m)->required();
  c_table->add_option("--cap", cap);
  c_table->add_option("--format", tb_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  // --- experiment --------------------------------------------------------
  std::string ex_recipe, ex_out = "experiment_out";
  CLI::App* c_exp = app.add_subcommand("experiment", "run a recipe of invocations");
  c_exp->add_option("--recipe", ex_recipe)->required();
  c_exp->add_option("--out", ex_out, "output directory");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  }

  auto t0 = std::chrono::steady_clock::now();
  auto wall = [&]() {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count());
  };

  if (*c_count) {
    DegreeSequence d = count_seq.get();
    Oracle oracle(cap);
    Int n = oracle.count(d, count_c.get(d.n()));
    json cfg;
    cfg["seq"] = d.degrees();
    cfg["cap"] = cap;
    json res;
    res["count"] = n.str();
    emit_report(out, "count", cfg, res, seed, wall());
    return 0;
  }
  if (*c_prob) {
    DegreeSequence d = prob_seq.get();
    if (pair_opt.size() != 2) throw ParseError("prob: --pair a,v required");
    Oracle oracle(cap);
    Rat p = oracle.edge_prob(d, pair_opt[0], pair_opt[1], prob_c.get(d.n()));
    json cfg;
    cfg["seq"] = d.degrees();
    cfg["pair"] = pair_opt;
    emit_report(out, "prob", cfg, rat_json(p), seed, wall());
    return 0;
  }
  if (*c_path) {
    DegreeSequence d = path_seq.get();
    if (triple_opt.size() != 3) throw ParseError("pathprob: --triple a,v,b required");
    Oracle oracle(cap);
    Rat p = oracle.path_prob(d, triple_opt[0], triple_opt[1], triple_opt[2], path_c.get(d.n()));
    json cfg;
    cfg["seq"] = d.degrees();
    cfg["triple"] = triple_opt;
    emit_report(out, "pathprob", cfg, rat_json(p), seed, wall());
    return 0;
  }
  if (*c_ratio) {
    DegreeSequence d = ratio_seq.get();
    if (pair_opt.size() != 2) throw ParseError("ratio: --pair a,b required");
    Oracle oracle(cap);
    Rat r = oracle.ratio(d, pair_opt[0], pair_opt[1], ratio_c.get(d.n()));
    json cfg;
    cfg["seq"] = d.degrees();
    cfg["pair"] = pair_opt;
    emit_report(out, "ratio", cfg, rat_json(r), seed, wall());
    return 0;
  }
  if (*c_graph) {
    DegreeSequence d = graph_seq.get();
    json cfg;
    cfg["seq"] = d.degrees();
    cfg["mode"] = gr_mode;
    json res;
    if (gr_mode == "eg" || gr_mode == "both") res["graphical"] = erdos_gallai(d.degrees());
    if (gr_mode == "koren" || gr_mode == "both") res["koren"] = koren_graphical(d.degrees());
    if (gr_mode == "koren") res["graphical"] = res["koren"];
    emit_report(out, "graphical", cfg, res, seed, wall());
    return 0;
  }
  if (*c_asym) {
    json cfg;
    cfg["formula"] = formula;
    json res;
    auto put = [&](const FormulaResult& f) {
      res["log_value"] = f.log_value;
      res["value"] = f.value;
    };
    std::optional<DegreeSequence> d;
    if (!asym_seq.seq.empty() || !asym_seq.seq_file.empty()) {
      d = asym_seq.get();
      cfg["seq"] = d->degrees();
    }
    if (formula == "binom") {
      put(binom_model_prob(*d));
      if (d->n() <= 16) res["exact"] = rat_json(binom_model_prob_exact(*d));
    } else if (formula == "h") {
      put(h_formula(*d));
    } else if (formula == "conj") {
      put(conjectured_count(*d));
    } else if (formula == "regular") {
      cfg["n"] = reg_n;
      cfg["d"] = reg_d;
      put(regular_count_formula(reg_n, reg_d));
    } else if (formula == "pgr" || formula == "edge") {
      if (pair_opt.size() != 2) throw ParseError("asym: --pair a,b required");
      cfg["pair"] = pair_opt;
      double v = formula == "pgr" ? pgr(*d, pair_opt[0], pair_opt[1])
                                  : edge_prob_formula(*d, pair_opt[0], pair_opt[1]);
      res["value"] = v;
      res["log_value"] = std::log(v);
    } else if (formula == "rgr") {
      if (pair_opt.size() != 2) throw ParseError("asym: --pair a,b required");
      cfg["pair"] = pair_opt;
      double v = rgr(*d, pair_opt[0], pair_opt[1]);
      res["value"] = v;
      res["log_value"] = std::log(v);
    } else if (formula == "sparse") {
      if (pair_opt.size() != 2) throw ParseError("asym: --pair a,v required");
      cfg["pair"] = pair_opt;
      double v = sparse_edge_prob(*d, pair_opt[0], pair_opt[1]);
      res["value"] = v;
      res["log_value"] = std::log(v);
    } else if (formula == "sparse_ratio") {
      if (pair_opt.size() != 2) throw ParseError("asym: --pair a,b required");
      cfg["pair"] = pair_opt;
      double v = sparse_ratio(*d, pair_opt[0], pair_opt[1]);
      res["value"] = v;
      res["log_value"] = std::log(v);
    } else if (formula == "pi" || formula == "rho") {
      PiRhoVariant var =
          variant == "section7" ? PiRhoVariant::section7 : PiRhoVariant::appendixA;
      cfg["variant"] = variant;
      cfg["eps_a"] = eps_a;
      cfg["eps_b"] = eps_b;
      cfg["mu"] = mu_par;
      cfg["sigma2"] = sigma2_par;
      cfg["dbar"] = dbar_par;
      cfg["n"] = reg_n;
      int nn = reg_n;
      if (nn <= 1) throw ParseError("asym pi/rho: --n required");
      double v = formula == "pi"
                     ? pi_formula(var, eps_a, eps_b, mu_par, sigma2_par, dbar_par, nn)
                     : rho_formula(var, eps_a, eps_b, mu_par, sigma2_par, dbar_par, nn);
      res["value"] = v;
      res["log_value"] = std::log(std::fabs(v));
    }
    if (d) {
      double eps = eps_par >= 0 ? eps_par : actual_spread(*d);
      ErrorEnvelope env = alpha > 0 ? error_envelope_alpha(*d, k0_opt, alpha)
                                    : error_envelope(*d, k0_opt, eps);
      res["envelope"] = envelope_json(env);
    }
    emit_report(out, "asym", cfg, res, seed, wall());
    return 0;
  }
  if (*c_fix) {
    DegreeSequence root = DegreeSequence::parse(fp_root);
    OperatorConfig ocfg{fp_k0};
    long long radius = fp_radius >= 0
                           ? fp_radius
                           : static_cast<long long>(fp_steps) * (2 * fp_k0 + 2) + 2;
    PairConstraint A(root.n());
    DomainLadder ladder{root.degrees(), radius};
    Oracle oracle(cap);
    std::optional<FixedPointResult<double>> float_result;
    std::optional<FixedPointResult<Rat>> exact_result;
    if (fp_init == "exact") {
      EdgeFunction<Rat> p0 = exact_edge_function(oracle, A);
      if (fp_scale != 1.0) p0 = scaled_function(p0, Rat(fp_scale));
      exact_result = iterate_fixed_point(p0, fp_steps, A, ocfg, ladder, nthreads());
    } else {
      EdgeFunction<double> p0 =
          fp_init == "pgr" ? pgr_function() : pi_function(PiRhoVariant::section7);
      if (fp_scale != 1.0) p0 = scaled_function(p0, fp_scale);
      float_result = iterate_fixed_point(p0, fp_steps, A, ocfg, ladder, nthreads());
    }
    json cfg;
    cfg["root"] = root.degrees();
    cfg["k0"] = fp_k0;
    cfg["steps"] = fp_steps;
    cfg["init"] = fp_init;
    cfg["radius"] = radius;
    cfg["scale"] = fp_scale;
    auto steps_of = [&]() -> const std::vector<FixedPointStep>& {
      return exact_result ? exact_result->steps : float_result->steps;
    };
    auto contraction_of = [&]() -> const std::vector<double>& {
      return exact_result ? exact_result->contraction : float_result->contraction;
    };
    if (fp_format == "csv") {
      out << "step,level,chi\n";
      for (const auto& s : steps_of())
        out << s.step << "," << s.level << "," << s.chi_consecutive << "\n";
      return 0;
    }
    json res;
    res["steps"] = json::array();
    for (const auto& s : steps_of()) {
      json row;
      row["step"] = s.step;
      row["level"] = s.level;
      row["chi"] = s.chi_consecutive;
      res["steps"].push_back(row);
    }
    res["contraction"] = contraction_of();
    emit_report(out, "fixpoint", cfg, res, seed, wall());
    return 0;
  }
  if (*c_sample) {
    ModelSpec spec = model_from(s_model, s_n, s_m, s_p, seed);
    auto draws = sample(spec, s_count, nthreads());
    auto write_jsonl = [&](std::ostream& os) {
      for (const auto& s : draws) {
        json row;
        row["draw"] = s.draw;
        row["degrees"] = s.degrees;
        os << row.dump() << "\n";
      }
    };
    if (!s_out.empty()) {
      std::ofstream of(s_out);
      if (!of) throw ParseError("cannot open output file: " + s_out);
      write_jsonl(of);
      json cfg;
      cfg["model"] = s_model;
      cfg["n"] = s_n;
      cfg["count"] = s_count;
      cfg["seed"] = seed;
      json res;
      res["written"] = s_count;
      res["path"] = s_out;
      emit_report(out, "sample", cfg, res, seed, wall());
    } else {
      write_jsonl(out);
    }
    return 0;
  }
  if (*c_cmp) {
    ModelSpec a = model_from(cm_a, cm_n, cm_ma, cm_pa, seed);
    ModelSpec b = model_from(cm_b, cm_n, cm_mb, cm_pb, cm_seed_b_set ? cm_seed_b : seed ^ 1);
    StatisticSpec stat = statistic_from_string(cm_stat);
    ComparisonReport rep = compare(a, b, stat, cm_count, cm_boot, nthreads());
    if (cm_format == "csv") {
      out << "statistic,tv,half_width,samples\n"
          << rep.statistic << "," << rep.tv << "," << rep.half_width << "," << rep.samples
          << "\n";
      return 0;
    }
    json cfg;
    cfg["model_a"] = cm_a;
    cfg["model_b"] = cm_b;
    cfg["n"] = cm_n;
    cfg["stat"] = rep.statistic;
    cfg["count"] = cm_count;
    cfg["seed"] = seed;
    json res;
    res["tv"] = rep.tv;
    res["half_width"] = rep.half_width;
    res["hist_a"] = histogram_json(rep.hist_a);
    res["hist_b"] = histogram_json(rep.hist_b);
    emit_report(out, "compare", cfg, res, seed, wall());
    return 0;
  }
  if (*c_conc) {
    ModelSpec spec = model_from(cc_model, cc_n, cc_m, -1, seed);
    ConcentrationReport rep = sigma_concentration(spec, cc_count, cc_alpha, nthreads());
    if (cc_format == "csv") {
      out << "var_d1,threshold,exceed_count,rate,samples\n"
          << rep.var_d1 << "," << rep.threshold << "," << rep.exceed_count << "," << rep.rate
          << "," << rep.samples << "\n";
      return 0;
    }
    json cfg;
    cfg["model"] = cc_model;
    cfg["n"] = cc_n;
    cfg["m"] = cc_m;
    cfg["alpha"] = cc_alpha;
    cfg["count"] = cc_count;
    cfg["seed"] = seed;
    json res;
    res["var_d1"] = rep.var_d1;
    res["threshold"] = rep.threshold;
    res["exceed_count"] = rep.exceed_count;
    res["rate"] = rep.rate;
    emit_report(out, "concentration", cfg, res, seed, wall());
    return 0;
  }
  if (*c_table) {
    Oracle oracle(cap);
    FormulaTable table = exact_vs_formula(tb_n, tb_m, oracle);
    json cfg;
    cfg["n"] = tb_n;
    cfg["m"] = tb_m;
    if (tb_format == "csv") {
      out << "degrees,perms,exact_num,exact_den,formula_log,ratio\n";
      for (const auto& row : table.rows) {
        std::string ds;
        for (std::size_t i = 0; i < row.degrees.size(); ++i)
          ds += (i ? " " : "") + std::to_string(row.degrees[i]);
        out << ds << "," << row.perms.str() << "," << numer(row.exact_prob).str() << ","
            << denom(row.exact_prob).str() << "," << row.formula_log << "," << row.ratio << "\n";
      }
      return 0;
    }
    json res;
    res["rows"] = json::array();
    for (const auto& row : table.rows) {
      json r;
      r["degrees"] = row.degrees;
      r["perms"] = row.perms.str();
      r["exact_prob"] = rat_json(row.exact_prob);
      r["formula_log"] = row.formula_log;
      r["ratio"] = row.ratio;
      res["rows"].push_back(r);
    }
    res["prob_sum"] = rat_json(table.prob_sum);
    emit_report(out, "table", cfg, res, seed, wall());
    return 0;
  }
  if (*c_exp) {
    return run_experiment(ex_recipe, ex_out, out);
  }
  err << R"({"error":{"type":"parse","message":"no subcommand"}})" << "\n";
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const CLI::ParseError& e) {
    json j;
    j["error"] = {{"type", "parse"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 2;
  } catch (const ParseError& e) {
    json j;
    j["error"] = {{"type", "parse"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    json j;
    j["error"] = {{"type", "capacity"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 3;
  } catch (const SingularityError& e) {
    json j;
    j["error"] = {{"type", "singularity"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 4;
  } catch (const DomainError& e) {
    json j;
    j["error"] = {{"type", "domain"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 4;
  } catch (const UndefinedError& e) {
    json j;
    j["error"] = {{"type", "undefined"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 4;
  } catch (const std::exception& e) {
    json j;
    j["error"] = {{"type", "internal"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 1;
  }
}

}  // namespace degseq::cli
