#include "compana/cli.hpp"

#include <compana/compana.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace compana::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Exact window bounds are used up to this n, the floating recurrence above.
constexpr std::uint64_t kExactBoundLimit = 2000;
constexpr std::uint64_t kDefaultSeriesLimit = 10000;

struct Common {
  std::string format = "csv";
  std::string out;
  int precision = 12;
};

struct Report {
  std::vector<Record> rows;
  bool single = false;              // JSON: one object instead of an array
  std::vector<Record> histogram;    // JSON only, nested under "histogram"
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", common.out, "Write output to FILE instead of stdout");
  cmd->add_option("--precision", common.precision, "Significant digits for reals")
      ->check(CLI::Range(1, 17));
}

ordered_json cell_json(const Cell& cell, int precision) {
  return std::visit(
      [&](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          // Same digits as the CSV output.
          return std::strtod(format_real(v, precision).c_str(), nullptr);
        } else {
          return v;
        }
      },
      cell);
}

ordered_json record_json(const Record& r, int precision) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : r.fields) j[key] = cell_json(value, precision);
  return j;
}

void emit(std::ostream& os, const Report& report, const Common& common) {
  if (common.format == "csv") {
    write_csv(os, report.rows, common.precision);
    return;
  }
  ordered_json j;
  if (report.single && report.rows.size() == 1) {
    j = record_json(report.rows.front(), common.precision);
    if (!report.histogram.empty()) {
      j["histogram"] = ordered_json::array();
      for (const auto& h : report.histogram) j["histogram"].push_back(record_json(h, common.precision));
    }
  } else {
    j = ordered_json::array();
    for (const auto& r : report.rows) j.push_back(record_json(r, common.precision));
  }
  os << j.dump(2) << '\n';
}

Cell optional_real(bool present, double v) { return present ? Cell{v} : Cell{}; }

double relative_difference(double approx, double reference) {
  return std::fabs(approx - reference) / std::fabs(reference);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ArgumentError(message);
}

SamplingConfig sampling_config(std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  require(trials >= 1, "--trials must be >= 1");
  require(workers >= 1, "--workers must be >= 1");
  return SamplingConfig{trials, seed, workers};
}

// -- commands -----------------------------------------------------------------

Report cmd_exact(std::uint64_t n, const std::vector<std::uint64_t>& only_m) {
  require(n >= 1, "--n must be >= 1");
  const auto dist = exact_event_distribution(n);
  Report rep;
  auto row = [&](std::uint64_t m) {
    const Rational p = m < dist.size() ? dist[m] : Rational(0);
    Record r;
    r.add("n", n).add("m", m).add("probability", to_fraction_string(p)).add("decimal", to_double(p));
    rep.rows.push_back(std::move(r));
  };
  if (only_m.empty()) {
    for (std::uint64_t m = 1; m < dist.size(); ++m) {
      if (dist[m] != 0) row(m);
    }
  } else {
    for (const auto m : only_m) row(m);
  }
  return rep;
}

Report cmd_prob(std::uint64_t n, std::uint64_t k, std::uint64_t m, const std::string& route) {
  require(n >= 1, "--n must be >= 1");
  require(k >= 1, "--k must be >= 1");
  const bool series = route != "singularity";
  const bool singular = route != "series";
  Record r;
  r.add("n", n).add("k", k).add("m", m);
  Rational exact;
  if (series) {
    exact = prob_multiplicity(n, k, m);
    r.add("series", to_fraction_string(exact)).add("series_decimal", to_double(exact));
  } else {
    r.add("series", Cell{}).add("series_decimal", Cell{});
  }
  if (singular) {
    const SingularityApprox a = singularity_approx_prob(static_cast<double>(n), k, m);
    r.add("singularity", a.value);
    if (series && exact != 0) {
      r.add("rel_err", relative_error_log(a.log_value, exact));
    } else {
      r.add("rel_err", Cell{});
    }
  } else {
    r.add("singularity", Cell{}).add("rel_err", Cell{});
  }
  Report rep;
  rep.rows.push_back(std::move(r));
  rep.single = true;
  return rep;
}

Report cmd_predict(double n, std::uint64_t m) {
  require(n >= 3.0, "--n must be >= 3");
  require(m >= 1, "--m must be >= 1");
  const double x = frac_log2(n);
  const double f = fluctuation_F(x, m);
  Record r;
  r.add("n", n)
      .add("m", m)
      .add("frac_log2_n", x)
      .add("F", f)
      .add("scaled", 1.0 / static_cast<double>(m) + f)
      .add("prediction", theorem1_prediction(n, m));
  Report rep;
  rep.rows.push_back(std::move(r));
  rep.single = true;
  return rep;
}

Report cmd_sample(std::uint64_t n, const std::vector<std::uint64_t>& ms, const SamplingConfig& config) {
  require(n >= 1, "--n must be >= 1");
  require(!ms.empty(), "--m is required");
  for (const auto m : ms) require(m >= 1, "--m must be >= 1");
  const MultiplicityEstimates est = mc_multiplicity_estimates(n, ms, config);
  Report rep;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const EventEstimate& e = est.event_probability[i];
    const bool predicted = n >= 3;
    const double pred = predicted ? theorem1_prediction(static_cast<double>(n), ms[i]) : 0.0;
    Record r;
    r.add("n", n)
        .add("m", ms[i])
        .add("trials", config.trials)
        .add("seed", config.seed)
        .add("workers", static_cast<std::uint64_t>(config.workers))
        .add("mc", e.value)
        .add("mc_stderr", e.std_error)
        .add("prediction", optional_real(predicted, pred))
        .add("rel_err_pred_mc", optional_real(predicted && e.value != 0.0, predicted && e.value != 0.0
                                                                              ? relative_difference(pred, e.value)
                                                                              : 0.0));
    rep.rows.push_back(std::move(r));
  }
  rep.single = ms.size() == 1;
  return rep;
}

Report cmd_distinct(std::uint64_t n, const SamplingConfig& config, bool histogram_csv) {
  require(n >= 1, "--n must be >= 1");
  const auto [a, b] = distinct_window(n);
  const DistinctSample sample = mc_distinct(n, config);
  const EventEstimate mean = sample.mean();
  const EventEstimate inside = sample.window_probability(a, b);

  double below = 0.0;
  double above = 0.0;
  std::string route;
  if (n <= kExactBoundLimit) {
    const WindowBounds w = lemma3_window_bounds(n, a, b);
    below = to_double(w.below);
    above = to_double(w.above);
    route = "exact";
  } else {
    const NumericWindowBounds w = lemma3_window_bounds_numeric(n, a, b);
    below = w.below;
    above = w.above;
    route = "numeric";
  }

  std::vector<Record> hist;
  for (const auto& [d, count] : sample.histogram) {
    Record h;
    h.add("distinct", d)
        .add("count", count)
        .add("fraction", static_cast<double>(count) / static_cast<double>(sample.trials));
    hist.push_back(std::move(h));
  }

  Report rep;
  if (histogram_csv) {
    rep.rows = std::move(hist);
    return rep;
  }
  Record r;
  r.add("n", n)
      .add("trials", config.trials)
      .add("seed", config.seed)
      .add("workers", static_cast<std::uint64_t>(config.workers))
      .add("a", a)
      .add("b", b)
      .add("mean_distinct", mean.value)
      .add("mean_distinct_stderr", mean.std_error)
      .add("window_probability", inside.value)
      .add("window_stderr", inside.std_error)
      .add("bound_below", below)
      .add("bound_above", above)
      .add("lower_bound", 1.0 - below - above)
      .add("bound_route", route);
  rep.rows.push_back(std::move(r));
  rep.single = true;
  rep.histogram = std::move(hist);
  return rep;
}

// E|M_m| from the count table of a full enumeration.
double enumerated_expected_count(std::uint64_t n, std::uint64_t m) {
  const auto table = multiplicity_count_table(n);
  BigInt total = 0;
  for (std::size_t k = 1; k < table.size(); ++k) {
    if (m < table[k].size()) total += BigInt(std::to_string(table[k][m]));
  }
  return to_double(Rational(total, pow2(static_cast<unsigned long>(n - 1))));
}

// Sum over k of the leading-pole approximation to P(size k has multiplicity m).
double singularity_expected_count(std::uint64_t n, std::uint64_t m) {
  const double nd = static_cast<double>(n);
  const double peak = std::log2(nd);
  double total = 0.0;
  for (std::uint64_t k = 1; k * m <= n; ++k) {
    const double term = singularity_approx_prob(nd, k, m).value;
    total += term;
    if (static_cast<double>(k) > peak + 4.0 && term < 1e-18 * total) break;
  }
  return total;
}

Report cmd_compare(const std::vector<std::uint64_t>& ns, std::uint64_t m, std::uint64_t trials,
                   std::uint64_t seed, unsigned workers, std::uint64_t series_limit) {
  require(!ns.empty(), "--n is required");
  require(m >= 1, "--m must be >= 1");
  const std::uint32_t cap = enumeration_cap();
  Report rep;
  for (const auto n : ns) {
    require(n >= 1, "--n values must be >= 1");
    const bool has_exact = n <= cap;
    const bool has_series = n <= series_limit;
    const bool has_pred = n >= 2;
    const bool has_mc = trials > 0;

    const double exact = has_exact ? enumerated_expected_count(n, m) : 0.0;
    const double series = has_series ? to_double(expected_Mm_exact(n, m)) : 0.0;
    const double singular = singularity_expected_count(n, m);
    const double pred = has_pred ? expected_Mm_asymptotic(static_cast<double>(n), m) : 0.0;
    EventEstimate mc;
    if (has_mc) {
      const std::uint64_t ms[] = {m};
      mc = mc_multiplicity_estimates(n, ms, sampling_config(trials, seed, workers)).expected_count[0];
    }

    Record r;
    r.add("n", n)
        .add("m", m)
        .add("exact", optional_real(has_exact, exact))
        .add("series", optional_real(has_series, series))
        .add("singularity", singular)
        .add("prediction", optional_real(has_pred, pred))
        .add("mc", optional_real(has_mc, mc.value))
        .add("mc_stderr", optional_real(has_mc, mc.std_error));
    const bool se = has_exact && has_series && exact != 0.0;
    r.add("rel_err_series_exact", optional_real(se, se ? relative_difference(series, exact) : 0.0));
    const bool pm = has_pred && has_mc && mc.value != 0.0;
    r.add("rel_err_pred_mc", optional_real(pm, pm ? relative_difference(pred, mc.value) : 0.0));
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

Report cmd_rho(const std::vector<std::uint64_t>& ks, bool winding) {
  Report rep;
  for (const std::uint64_t k : ks) {
    require(k >= 1, "--k must be >= 1");
    const RhoSolution s = solve_rho(k);
    Record r;
    r.add("k", k)
        .add("rho", s.rho)
        .add("epsilon", s.epsilon)
        .add("bracket_lo", s.bracket_lo)
        .add("bracket_hi", s.bracket_hi)
        .add("residual", s.residual)
        .add("method", std::string(to_string(s.method)));
    if (winding) r.add("winding", static_cast<std::int64_t>(check_unique_root(k)));
    rep.rows.push_back(std::move(r));
  }
  rep.single = ks.size() == 1;
  return rep;
}

Report cmd_mellin(double n, std::uint64_t m, unsigned p_max) {
  require(n >= 2.0, "--n must be >= 2");
  require(m >= 1, "--m must be >= 1");
  const HarmonicSumResult h = harmonic_sum(n, m, p_max);
  Record r;
  r.add("n", n)
      .add("m", m)
      .add("direct", h.direct)
      .add("residue", h.residue)
      .add("rel_diff", relative_difference(h.residue, h.direct))
      .add("k_lo", h.k_lo)
      .add("k_hi", h.k_hi)
      .add("p_max", static_cast<std::uint64_t>(h.p_max));
  Report rep;
  rep.rows.push_back(std::move(r));
  rep.single = true;
  return rep;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicities of part sizes in random integer compositions"};
  app.name("compana");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  std::string n_text;
  std::string m_text;
  std::uint64_t k = 0;
  std::string k_text;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string route = "both";
  bool histogram = false;
  bool winding = false;
  unsigned p_max = kDefaultHarmonics;
  std::string series_limit_text = std::to_string(kDefaultSeriesLimit);
  std::function<Report()> action;

  auto add_n = [&](CLI::App* cmd, const char* help) { cmd->add_option("--n", n_text, help)->required(); };
  auto add_sampling = [&](CLI::App* cmd) {
    cmd->add_option("--trials", trials, "Monte Carlo samples");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--workers", workers, "Worker threads");
  };

  auto* exact = app.add_subcommand("exact", "P(A_n^(m)) by enumeration, as exact fractions");
  add_n(exact, "Composition size");
  exact->add_option("--m", m_text, "Only these multiplicities (comma list)");
  add_common(exact, common);
  exact->callback([&] {
    action = [&] {
      return cmd_exact(parse_count(n_text), m_text.empty() ? std::vector<std::uint64_t>{} : parse_count_list(m_text));
    };
  });

  auto* prob = app.add_subcommand("prob", "P(size k has multiplicity m) by series and singularity routes");
  add_n(prob, "Composition size");
  prob->add_option("--k", k, "Part size")->required();
  prob->add_option("--m", m_text, "Multiplicity (0 allowed)")->required();
  prob->add_option("--route", route, "series, singularity or both")
      ->check(CLI::IsMember({"series", "singularity", "both"}));
  add_common(prob, common);
  prob->callback([&] { action = [&] { return cmd_prob(parse_count(n_text), k, parse_count(m_text), route); }; });

  auto* predict = app.add_subcommand("predict", "Asymptotic P(A_n^(m)) with its fluctuation term");
  add_n(predict, "Composition size (real, e.g. 1e6 or 10^6)");
  predict->add_option("--m", m_text, "Multiplicity")->required();
  add_common(predict, common);
  predict->callback([&] { action = [&] { return cmd_predict(parse_real(n_text), parse_count(m_text)); }; });

  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of P(A_n^(m))");
  add_n(sample, "Composition size");
  sample->add_option("--m", m_text, "Multiplicities (comma list)")->required();
  add_sampling(sample);
  add_common(sample, common);
  sample->callback([&] {
    action = [&] {
      return cmd_sample(parse_count(n_text), parse_count_list(m_text), sampling_config(trials, seed, workers));
    };
  });

  auto* distinct = app.add_subcommand("distinct", "Empirical law of the number of distinct part sizes");
  add_n(distinct, "Composition size");
  add_sampling(distinct);
  distinct->add_flag("--histogram", histogram, "CSV: print the histogram instead of the summary");
  add_common(distinct, common);
  distinct->callback([&] {
    action = [&] { return cmd_distinct(parse_count(n_text), sampling_config(trials, seed, workers), histogram); };
  });

  auto* compare = app.add_subcommand("compare", "E|M_m| across every route, one row per n");
  add_n(compare, "Sizes: list and/or ranges, e.g. 10,100 or 10^3..10^4");
  compare->add_option("--m", m_text, "Multiplicity")->required();
  compare->add_option("--trials", trials, "Monte Carlo samples (0 skips the mc columns)");
  compare->add_option("--seed", seed, "RNG seed");
  compare->add_option("--workers", workers, "Worker threads");
  compare->add_option("--series-limit", series_limit_text, "Largest n for the exact series column");
  add_common(compare, common);
  compare->callback([&] {
    action = [&] {
      return cmd_compare(parse_count_list(n_text), parse_count(m_text), trials, seed, workers,
                         parse_count(series_limit_text));
    };
  });
  compare->preparse_callback([&](std::size_t) { trials = 0; });

  auto* rho = app.add_subcommand("rho", "Dominant singularity for part size k");
  rho->add_option("--k", k_text, "Part size, or a list such as 1,2,3 or 1..32")->required();
  rho->add_flag("--winding", winding, "Also count zeros inside the unit circle");
  add_common(rho, common);
  rho->callback([&] { action = [&] { return cmd_rho(parse_count_list(k_text), winding); }; });

  auto* mellin = app.add_subcommand("mellin", "Harmonic sum by direct summation and by residues");
  add_n(mellin, "Composition size (real)");
  mellin->add_option("--m", m_text, "Multiplicity")->required();
  mellin->add_option("--p-max", p_max, "Harmonics in the residue series");
  add_common(mellin, common);
  mellin->callback([&] { action = [&] { return cmd_mellin(parse_real(n_text), parse_count(m_text), p_max); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "compana: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    const Report report = action();
    if (common.out.empty()) {
      emit(out, report, common);
    } else {
      std::ofstream file(common.out);
      if (!file) {
        err << "compana: cannot open " << common.out << '\n';
        return kUsageError;
      }
      emit(file, report, common);
    }
    return kOk;
  } catch (const NumericalInstability& e) {
    err << "compana: numerical instability: " << e.what() << '\n';
    return kNumericalError;
  } catch (const NonFiniteValue& e) {
    err << "compana: numerical instability: " << e.what() << '\n';
    return kNumericalError;
  } catch (const CapExceeded& e) {
    err << "compana: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "compana: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "compana: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "compana: " << e.what() << '\n';
    return kUsageError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("compana");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace compana::cli
