#include "quartic_sos/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "quartic_sos/classify.hpp"
#include "quartic_sos/corpus.hpp"
#include "quartic_sos/io.hpp"

namespace quartic_sos {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);  // no "-0"
  return buf;
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_real(c.real());
  std::string im = format_real(std::abs(c.imag()));
  return format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + im + "i";
}

std::string format_form(const QuadraticForm<Complex>& q) {
  std::string out = "[";
  for (int i = 0; i < 6; ++i) out += (i ? ", " : "") + format_complex(q.c[i]);
  return out + "]";
}

std::string format_counts(const Counts& c) {
  return std::to_string(c.complex_total) + " / " + std::to_string(c.real_total) + " / " +
         std::to_string(c.psd_total);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QUARTIC_SOS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("QUARTIC_SOS_SEED is not an integer: ") + env);
    }
  }
  return SolveConfig{}.master_seed;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

TernaryQuartic read_form(const std::string& text, const std::string& json_in) {
  if (!json_in.empty()) {
    if (!text.empty()) throw InputError("give either a form or --json-in, not both");
    return quartic_from_json(read_json_file(json_in));
  }
  if (text.empty()) throw InputError("no form given");
  return parse_quartic(text);
}

using Clock = std::chrono::steady_clock;

struct Timer {
  std::ostream& err;
  Clock::time_point start = Clock::now();
  void lap(const char* stage) {
    const auto now = Clock::now();
    err << "time " << stage << ": " << std::fixed << std::setprecision(3)
        << std::chrono::duration<double>(now - start).count() << " s\n"
        << std::defaultfloat;
    start = now;
  }
};

void print_curve(std::ostream& out, const CurveStatus& c) {
  out << "smooth: " << (c.smooth ? "yes" : "no") << " (" << c.method;
  if (c.resultant) out << ", resultant " << c.resultant->get_str();
  if (c.macaulay_rank) out << ", rank " << *c.macaulay_rank << " of 36";
  out << ")\n";
  if (c.witness) {
    const auto& w = *c.witness;
    out << "singular point: (" << format_complex(w[0]) << " : " << format_complex(w[1]) << " : "
        << format_complex(w[2]) << ")\n";
  }
}

void print_positivity(std::ostream& out, const PositivityStatus& p) {
  const char* verdict = p.verdict == PositivityVerdict::Nonnegative ? "yes"
                        : p.verdict == PositivityVerdict::Negative  ? "no"
                                                                    : "undecided";
  out << "nonnegative: " << verdict << " (best min eigenvalue "
      << format_real(p.best_min_eigenvalue) << ")\n";
  if (p.counterexample) {
    const auto& x = *p.counterexample;
    out << "counterexample: f(" << format_real(x[0]) << ", " << format_real(x[1]) << ", "
        << format_real(x[2]) << ") = " << format_real(p.counterexample_value->get_d()) << "\n";
  }
}

Json curve_json(const CurveStatus& c) {
  Json j{{"smooth", c.smooth}, {"method", c.method}};
  j["resultant"] = c.resultant ? Json(c.resultant->get_str()) : Json(nullptr);
  j["macaulay_rank"] = c.macaulay_rank ? Json(*c.macaulay_rank) : Json(nullptr);
  if (c.witness) {
    j["singular_point"] = Json::array({complex_to_json((*c.witness)[0]),
                                       complex_to_json((*c.witness)[1]),
                                       complex_to_json((*c.witness)[2])});
  }
  return j;
}

Json positivity_json(const PositivityStatus& p) {
  Json j{{"nonnegative", p.nonnegative}, {"best_min_eigenvalue", p.best_min_eigenvalue}};
  if (p.counterexample) {
    j["counterexample"] = *p.counterexample;
    j["counterexample_value"] = p.counterexample_value->get_str();
  }
  return j;
}

// --- check ---------------------------------------------------------------

int cmd_check(const TernaryQuartic& f, std::uint64_t seed, std::ostream& out) {
  out << "form: " << to_string(f) << "\n";
  const CurveStatus curve = smoothness_test(f);
  print_curve(out, curve);
  const CommonZero oracle = numeric_singularity_oracle(f, 200, seed);
  out << "numeric singular point search: " << (oracle.found ? "found" : "none found")
      << " (best residual " << format_real(oracle.residual) << ")\n";
  print_positivity(out, nonnegativity_test(f, build_family(f), seed));
  return kExitOk;
}

// --- decompose -----------------------------------------------------------

enum class Selection { Real, SosOnly, All };

int cmd_decompose(const TernaryQuartic& f, const SolveConfig& config, Selection selection,
                  const std::string& json_path, std::ostream& out, std::ostream& err) {
  Timer timer{err};
  out << "form: " << to_string(f) << "\n";
  const PipelineReport report = run_pipeline(f, config);
  timer.lap("pipeline");

  print_curve(out, report.curve);
  if (report.positivity) print_positivity(out, *report.positivity);

  Json j{{"input", quartic_to_json(f)}, {"curve", curve_json(report.curve)}};
  if (report.positivity) j["positivity"] = positivity_json(*report.positivity);
  j["failed_hypothesis"] = report.failed ? Json(to_string(*report.failed)) : Json(nullptr);

  int code = kExitOk;
  if (report.failed == Hypothesis::Smooth) {
    out << "hypothesis failed: smooth (curve is singular; counts not asserted)\n";
    code = kExitHypothesis;
  }

  Json certificates = Json::array();
  if (report.solutions) {
    const SolutionSet& set = *report.solutions;
    out << "counts (complex / real / psd): " << format_counts(set.counts);
    if (!report.failed) {
      out << " expected " << format_counts(kExpectedCounts) << ": "
          << (report.pass ? "pass" : "fail");
    }
    out << "\n";
    out << "classes: " << report.sum_of_squares << " sums of squares, " << report.signed_real
        << " signed real, " << report.non_real << " non-real\n";
    if (set.budget_exhausted) out << "budget exhausted: new classes were still appearing\n";

    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < report.representations.size(); ++i) {
      const Representation& r = report.representations[i];
      const bool pick = selection == Selection::All ||
                        (selection == Selection::Real && r.is_real()) ||
                        (selection == Selection::SosOnly && r.is_real() && r.all_plus());
      if (pick) chosen.push_back(i);
    }
    out << "certificates: " << chosen.size()
        << " (forms as coefficients of x^2, y^2, z^2, yz, xz, xy)\n";
    int n = 0;
    for (std::size_t i : chosen) {
      const Representation& r = report.representations[i];
      const Verification v = verify_representation(f, r);
      out << "[" << ++n << "] " << (r.is_real() ? (r.all_plus() ? "sum of squares" : "signed")
                                                : "complex")
          << ", residual " << format_real(v.residual) << (v.exact ? " (exact)" : "")
          << ", verified " << (v.pass ? "yes" : "no") << ", basepoint-free "
          << (v.basepoint_free ? "yes" : "no") << "\n";
      for (int k = 0; k < 3; ++k) {
        out << "    " << (r.signs[k] > 0 ? "+" : "-") << " " << format_form(r.forms[k]) << "^2\n";
      }
      certificates.push_back(representation_to_json(r, v.basepoint_free));
    }
    timer.lap("verify");

    j["solutions"] = solution_set_to_json(set);
    j["expected"] = counts_to_json(kExpectedCounts);
    j["classes"] = Json{{"sum_of_squares", report.sum_of_squares},
                        {"signed_real", report.signed_real},
                        {"non_real", report.non_real}};
    if (report.count_report) {
      j["conjugate_pairs"] = report.count_report->conjugate_pairs;
    }
    j["pass"] = report.pass;

    if (report.failed == Hypothesis::Nonnegative) {
      out << "hypothesis failed: nonnegative (counts reported, not asserted)\n";
      code = kExitHypothesis;
    } else if (!report.pass) {
      code = kExitCountMiss;
    }
  }
  j["certificates"] = certificates;

  if (!json_path.empty()) {
    std::ofstream file(json_path);
    if (!file) throw InputError("cannot write " + json_path);
    file << j.dump(2) << "\n";
  }
  return code;
}

// --- corpus --------------------------------------------------------------

int cmd_corpus(std::uint64_t seed, int count, const SolveConfig& config, std::ostream& out,
               std::ostream& err) {
  Timer timer{err};
  const std::vector<CorpusEntry> corpus = build_corpus(seed, count);
  bool all_pass = true;
  out << std::left << std::setw(12) << "quartic" << std::setw(9) << "complex" << std::setw(6)
      << "real" << std::setw(5) << "psd" << "result\n";
  for (const CorpusEntry& e : corpus) {
    const PipelineReport r = run_pipeline(e.form, config);
    Counts c;
    if (r.solutions) c = r.solutions->counts;
    all_pass = all_pass && r.pass;
    out << std::setw(12) << e.name << std::setw(9) << c.complex_total << std::setw(6)
        << c.real_total << std::setw(5) << c.psd_total << (r.pass ? "pass" : "fail") << "\n";
    timer.lap(e.name.c_str());
  }
  out << std::right << "\n";
  for (const CorpusEntry& e : corpus) out << e.name << ": " << to_string(e.form) << "\n";
  return all_pass ? kExitOk : kExitCountMiss;
}

// --- verify --------------------------------------------------------------

int cmd_verify(const TernaryQuartic& f, const std::string& cert_path, std::ostream& out) {
  const std::vector<Representation> certs = certificates_from_json(read_json_file(cert_path));
  out << "form: " << to_string(f) << "\n";
  bool all_pass = true;
  int n = 0;
  for (const Representation& r : certs) {
    const Verification v = verify_representation(f, r);
    all_pass = all_pass && v.pass;
    out << "[" << ++n << "] " << (v.pass ? "pass" : "fail") << ", residual "
        << format_real(v.residual) << (v.exact ? " (exact)" : "") << ", basepoint-free "
        << (v.basepoint_free ? "yes" : "no") << "\n";
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signed quadratic representations of ternary quartic forms"};
  app.require_subcommand(1);

  std::string form;
  std::string json_in;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  int restarts = SolveConfig{}.restarts;
  int count = 5;
  std::string json_out;
  std::string cert_path;
  bool all = false;
  bool sos_only = false;

  auto add_form = [&](CLI::App* cmd) {
    cmd->add_option("form", form, "quartic form, e.g. \"x^4+y^4+z^4\"");
    cmd->add_option("--json-in", json_in, "read the form as a JSON coefficient map");
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "master seed (default: $QUARTIC_SOS_SEED or built-in)");
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--restarts", restarts, "solver restarts")->check(CLI::NonNegativeNumber);
    cmd->add_option("--threads", threads, "worker cap, 0 = all cores")->check(CLI::NonNegativeNumber);
  };

  CLI::App* check = app.add_subcommand("check", "test smoothness and non-negativity");
  add_form(check);
  add_seed(check);

  CLI::App* decompose = app.add_subcommand("decompose", "compute and classify all representations");
  add_form(decompose);
  add_seed(decompose);
  add_solver(decompose);
  decompose->add_option("--json", json_out, "write the full report as JSON");
  auto* all_flag = decompose->add_flag("--all", all, "print every class, complex ones included");
  decompose->add_flag("--sos-only", sos_only, "print only sums of three real squares")
      ->excludes(all_flag);

  CLI::App* corpus = app.add_subcommand("corpus", "run the Fermat quartic and random quartics");
  add_seed(corpus);
  add_solver(corpus);
  corpus->add_option("--count", count, "number of random quartics")->check(CLI::NonNegativeNumber);

  CLI::App* verify = app.add_subcommand("verify", "check certificates against a form");
  add_form(verify);
  verify->add_option("--cert", cert_path, "certificate JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    SolveConfig config;
    config.master_seed = seed ? *seed : default_seed();
    config.restarts = restarts;
    config.threads = threads;

    if (*check) return cmd_check(read_form(form, json_in), config.master_seed, out);
    if (*decompose) {
      const Selection selection = all ? Selection::All
                                  : sos_only ? Selection::SosOnly
                                             : Selection::Real;
      return cmd_decompose(read_form(form, json_in), config, selection, json_out, out, err);
    }
    if (*corpus) return cmd_corpus(config.master_seed, count, config, out, err);
    if (*verify) return cmd_verify(read_form(form, json_in), cert_path, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const JsonFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace quartic_sos
