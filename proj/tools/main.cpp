// Batch front end: parses pencil/tuple/candidate JSON documents, dispatches
// to the library, and emits machine-readable or human-readable reports.
//
// Exit codes: 0 success, 1 mathematically meaningful refutation or FAIL,
// 2 usage or input error, 3 numeric failure.

#include "freespec/caratheodory.hpp"
#include "freespec/classify.hpp"
#include "freespec/freemap.hpp"
#include "freespec/json_io.hpp"
#include "freespec/pencil.hpp"
#include "freespec/sampling.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

namespace {

using freespec::Json;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Options {
  double tol = freespec::kDefaultTol;
  std::uint64_t seed = 0;
  int budget = 500;
  std::vector<int> levels = {1, 2, 3};
  std::string format = "text";
  bool rescale = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--tol", opt.tol, "membership tolerance on the smallest eigenvalue");
  cmd->add_option("--seed", opt.seed, "random seed recorded in the report");
  cmd->add_option("--budget", opt.budget, "sample budget for randomized procedures");
  cmd->add_option("--levels", opt.levels, "matrix levels to sample");
  cmd->add_option("--format", opt.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--rescale-norms", opt.rescale,
                "rescale pencil blocks to norm one instead of rejecting them");
}

Json base_report(const std::string& verb, const Options& opt) {
  Json report;
  report["schema"] = freespec::kSchemaTag;
  report["command"] = verb;
  report["seed"] = opt.seed;
  return report;
}

void emit(const Json& report, const Options& opt,
          const std::vector<std::string>& text_lines) {
  if (opt.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const std::string& line : text_lines) std::cout << line << "\n";
  }
}

freespec::Pencil load_pencil(const std::string& path, const Options& opt) {
  return freespec::pencil_from_json(freespec::load_json(path), opt.rescale);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

int run_classify(const std::string& pencil_path, const Options& opt) {
  const freespec::Pencil p = load_pencil(pencil_path, opt);
  const freespec::IndexClassification exact = freespec::classify_indices(p);
  const freespec::IndexClassification grid = freespec::classify_oracle_grid(p);
  const bool agree = exact == grid;
  Json report = base_report("classify", opt);
  report["classification"] = freespec::classification_to_json(exact);
  report["oracle"] = freespec::classification_to_json(grid);
  report["oracle_agrees"] = agree;

  auto join = [](const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s + "}";
  };
  std::vector<std::string> lines;
  lines.push_back(agree ? "OK: kernel criterion and grid oracle agree"
                        : "MISMATCH: kernel criterion disagrees with grid oracle");
  lines.push_back("zplus " + join(exact.zplus));
  lines.push_back("zminus " + join(exact.zminus));
  lines.push_back("plain " + join(exact.plain()));
  emit(report, opt, lines);
  return agree ? kExitOk : kExitRefuted;
}

int run_member(const std::string& pencil_path, const std::string& tuple_path,
               const Options& opt) {
  const freespec::Pencil p = load_pencil(pencil_path, opt);
  const freespec::MatrixTuple t =
      freespec::tuple_from_json(freespec::load_json(tuple_path));
  const freespec::MembershipVerdict v = freespec::membership(p, t, opt.tol);
  Json report = base_report("member", opt);
  report["verdict"] = freespec::to_string(v.verdict);
  report["margin"] = v.margin;
  emit(report, opt,
       {std::string(freespec::to_string(v.verdict)), "margin " + fmt(v.margin)});
  return kExitOk;
}

int run_eta(const std::string& pencil_path, int k, const std::string& mode,
            const Options& opt) {
  const freespec::Pencil p = load_pencil(pencil_path, opt);
  freespec::EtaMode m = freespec::EtaMode::Full;
  if (mode == "right-only") m = freespec::EtaMode::RightOnly;
  if (mode == "left-only") m = freespec::EtaMode::LeftOnly;
  const double eta = freespec::eta_radius(p, k, m);
  Json report = base_report("eta", opt);
  report["k"] = k;
  report["mode"] = mode;
  if (std::isinf(eta)) {
    report["eta"] = "unbounded";
  } else {
    report["eta"] = eta;
  }
  emit(report, opt, {std::isinf(eta) ? "unbounded" : fmt(eta)});
  return kExitOk;
}

int run_verify(const std::string& pencil_path, const std::string& cand_path,
               const Options& opt) {
  const freespec::Pencil p = load_pencil(pencil_path, opt);
  const freespec::CandidateAutomorphism c =
      freespec::candidate_from_json(freespec::load_json(cand_path));
  freespec::SamplePlan plan;
  plan.seed = opt.seed;
  plan.levels = opt.levels;
  plan.random_interior = opt.budget;
  const freespec::VerifyReport r = freespec::verify_automorphism(p, c, plan);
  Json report = base_report("verify", opt);
  report["report"] = freespec::verify_report_to_json(r);
  std::vector<std::string> lines;
  lines.push_back(r.pass ? "PASS (not refuted at this sample size)" : "FAIL");
  lines.push_back("samples " + std::to_string(r.samples_run) + ", failures " +
                  std::to_string(r.failures) + ", eval errors " +
                  std::to_string(r.eval_errors));
  lines.push_back("worst margin " + fmt(r.worst_margin));
  emit(report, opt, lines);
  return r.pass ? kExitOk : kExitRefuted;
}

int run_normalize(const std::string& cand_path, const std::string& out_path,
                  const Options& opt) {
  const freespec::CandidateAutomorphism c =
      freespec::candidate_from_json(freespec::load_json(cand_path));
  const Json normalized = freespec::candidate_to_json(freespec::normalize(c));
  if (!out_path.empty()) freespec::save_json(out_path, normalized);
  Json report = base_report("normalize", opt);
  report["candidate"] = normalized;
  emit(report, opt, {normalized.dump(2)});
  return kExitOk;
}

int run_compose(const std::string& outer_path, const std::string& inner_path,
                const std::string& out_path, const Options& opt) {
  const freespec::CandidateAutomorphism outer =
      freespec::candidate_from_json(freespec::load_json(outer_path));
  const freespec::CandidateAutomorphism inner =
      freespec::candidate_from_json(freespec::load_json(inner_path));
  const Json composed = freespec::candidate_to_json(freespec::compose(outer, inner));
  if (!out_path.empty()) freespec::save_json(out_path, composed);
  Json report = base_report("compose", opt);
  report["candidate"] = composed;
  emit(report, opt, {composed.dump(2)});
  return kExitOk;
}

int run_detect(const std::string& pencil_path, int nu,
               std::vector<int> summand, const Options& opt) {
  const freespec::Pencil p = load_pencil(pencil_path, opt);
  if (summand.empty()) summand = {1};
  freespec::DetectorConfig cfg;
  cfg.budget = opt.budget;
  cfg.seed = opt.seed == 0 ? 1 : opt.seed;
  cfg.levels = opt.levels;

  Json report = base_report("detect", opt);
  std::vector<std::string> lines;
  bool refuted = false;

  const freespec::StructureReport poly =
      freespec::detect_polydisc_summand(p, summand, cfg);
  report["polydisc_summand"] = freespec::structure_report_to_json(poly);
  lines.push_back(std::string("polydisc-summand: ") + freespec::to_string(poly.verdict));
  refuted = refuted || poly.verdict == freespec::StructVerdict::Refuted;

  if (p.g() > 1) {
    const freespec::StructureReport sum = freespec::detect_direct_sum(p, nu, cfg);
    report["direct_sum"] = freespec::structure_report_to_json(sum);
    lines.push_back(std::string("direct-sum: ") + freespec::to_string(sum.verdict));
    refuted = refuted || sum.verdict == freespec::StructVerdict::Refuted;
  } else {
    report["direct_sum"] = nullptr;
    lines.push_back("direct-sum: not applicable (single coordinate)");
  }
  emit(report, opt, lines);
  return refuted ? kExitRefuted : kExitOk;
}

int run_caratheodory(double c0_re, double c0_im, double theta,
                     std::vector<double> weights, const Options& opt) {
  freespec::MobiusSeed seed{freespec::Complex(c0_re, c0_im), theta};
  if (weights.empty()) weights = {1.0, 1.0};
  freespec::WeightedShift shift;
  for (double w : weights) shift.weights.emplace_back(w, 0.0);
  const freespec::Matrix t = freespec::extreme_toeplitz(seed, shift);
  const double norm = freespec::op_norm(t);
  Json report = base_report("caratheodory", opt);
  report["norm"] = norm;
  report["T"] = freespec::matrix_to_json(t);
  Json sweep = Json::array();
  std::vector<std::string> lines = {"norm " + fmt(norm)};
  for (double mu : {1e-3, 1e-2, 1e-1}) {
    const double excess = freespec::rigidity_excess(t, mu);
    sweep.push_back({{"mu", mu}, {"excess", excess}});
    lines.push_back("rigidity mu=" + fmt(mu) + " excess " + fmt(excess));
  }
  report["rigidity"] = std::move(sweep);
  emit(report, opt, lines);
  return kExitOk;
}

int run_sample(const std::string& pencil_path, const std::string& out_path,
               const Options& opt) {
  const freespec::Pencil p = load_pencil(pencil_path, opt);
  Json report = base_report("sample", opt);
  Json tuples = Json::array();
  std::vector<std::string> lines;
  for (const freespec::MatrixTuple& t : freespec::all_structured_tuples(p)) {
    const freespec::MembershipVerdict v = freespec::membership(p, t, opt.tol);
    Json entry;
    entry["tuple"] = freespec::tuple_to_json(t);
    entry["verdict"] = freespec::to_string(v.verdict);
    entry["margin"] = v.margin;
    tuples.push_back(std::move(entry));
    lines.push_back(std::string(freespec::to_string(v.verdict)) + " margin " +
                    fmt(v.margin));
  }
  report["tuples"] = std::move(tuples);
  if (!out_path.empty()) freespec::save_json(out_path, report);
  emit(report, opt, lines);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyper-Reinhardt free spectrahedra toolkit"};
  app.require_subcommand(1);

  Options opt;
  std::string pencil_path, tuple_path, cand_path, outer_path, inner_path, out_path;
  int k = 1;
  int nu = 1;
  std::string mode = "full";
  std::vector<int> summand;
  double c0_re = 0.5, c0_im = 0.0, theta = 0.0;
  std::vector<double> weights;

  CLI::App* classify = app.add_subcommand("classify", "index classification with oracle cross-check");
  classify->add_option("pencil", pencil_path, "pencil JSON")->required();
  add_common(classify, opt);

  CLI::App* member = app.add_subcommand("member", "membership verdict for a tuple");
  member->add_option("pencil", pencil_path, "pencil JSON")->required();
  member->add_option("tuple", tuple_path, "tuple JSON")->required();
  add_common(member, opt);

  CLI::App* eta = app.add_subcommand("eta", "feasible neighbor-weight radius");
  eta->add_option("pencil", pencil_path, "pencil JSON")->required();
  eta->add_option("-k,--coordinate", k, "anchor coordinate (1-based)")->required();
  eta->add_option("--mode", mode, "full, right-only, or left-only")
      ->check(CLI::IsMember({"full", "right-only", "left-only"}));
  add_common(eta, opt);

  CLI::App* verify = app.add_subcommand("verify", "refutation search for a candidate map");
  verify->add_option("pencil", pencil_path, "pencil JSON")->required();
  verify->add_option("candidate", cand_path, "candidate JSON")->required();
  add_common(verify, opt);

  CLI::App* normalize = app.add_subcommand("normalize", "normalize a candidate map");
  normalize->add_option("candidate", cand_path, "candidate JSON")->required();
  normalize->add_option("-o,--output", out_path, "write the result here");
  add_common(normalize, opt);

  CLI::App* compose = app.add_subcommand("compose", "compose two candidate maps");
  compose->add_option("outer", outer_path, "outer candidate JSON")->required();
  compose->add_option("inner", inner_path, "inner candidate JSON")->required();
  compose->add_option("-o,--output", out_path, "write the result here");
  add_common(compose, opt);

  CLI::App* detect = app.add_subcommand("detect", "structure detectors");
  detect->add_option("pencil", pencil_path, "pencil JSON")->required();
  detect->add_option("--nu", nu, "split index for the direct-sum test");
  detect->add_option("--summand", summand, "index set for the polydisc test");
  add_common(detect, opt);

  CLI::App* cara = app.add_subcommand("caratheodory", "extreme Toeplitz matrix and rigidity sweep");
  cara->add_option("--c0-re", c0_re, "real part of the seed");
  cara->add_option("--c0-im", c0_im, "imaginary part of the seed");
  cara->add_option("--theta", theta, "seed phase");
  cara->add_option("--weights", weights, "shift weights (first must be 1)");
  add_common(cara, opt);

  CLI::App* sample = app.add_subcommand("sample", "dump the structured boundary tuples");
  sample->add_option("pencil", pencil_path, "pencil JSON")->required();
  sample->add_option("-o,--output", out_path, "write the report here");
  add_common(sample, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify->parsed()) return run_classify(pencil_path, opt);
    if (member->parsed()) return run_member(pencil_path, tuple_path, opt);
    if (eta->parsed()) return run_eta(pencil_path, k, mode, opt);
    if (verify->parsed()) return run_verify(pencil_path, cand_path, opt);
    if (normalize->parsed()) return run_normalize(cand_path, out_path, opt);
    if (compose->parsed()) return run_compose(outer_path, inner_path, out_path, opt);
    if (detect->parsed()) return run_detect(pencil_path, nu, summand, opt);
    if (cara->parsed()) return run_caratheodory(c0_re, c0_im, theta, weights, opt);
    if (sample->parsed()) return run_sample(pencil_path, out_path, opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
