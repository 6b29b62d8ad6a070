#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zeckphi/correlation.hpp"
#include "zeckphi/genfun.hpp"
#include "zeckphi/morphic.hpp"
#include "zeckphi/quasiadd.hpp"
#include "zeckphi/zeck.hpp"

using namespace zeckphi;
using nlohmann::json;

namespace {

std::string num(double x) {
  if (std::abs(x) < 9.007199254740992e15 && x == std::floor(x)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string num(std::complex<double> v) {
  if (v.imag() == 0.0) return num(v.real());
  return num(v.real()) + (v.imag() < 0 ? "-" : "+") +
         num(std::abs(v.imag())) + "i";
}

template <class T>
std::string join(const std::vector<T>& values, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

using Rows = std::vector<std::pair<std::string, std::string>>;

std::string rows_plain(const Rows& rows) {
  std::string out;
  for (const auto& [key, value] : rows) out += key + " " + value + "\n";
  return out;
}

std::string rows_csv(const Rows& rows) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : rows) out += key + "," + value + "\n";
  return out;
}

// The three output renderings every subcommand provides.
struct Rendering {
  std::string plain;
  std::string csv;
  json j;
};

std::string plain_correlation(const CorrelationReport& report) {
  std::string out = "spec " + report.spec_name + "\n" +
                    "N " + std::to_string(report.N) + "\n";
  for (const auto& [cp, sum] : report.partial_sums)
    out += "checkpoint " + std::to_string(cp) + " sum " + num(sum) +
           " normalized " + num(std::abs(sum) / static_cast<double>(cp)) +
           "\n";
  for (const auto& [k, sum] : report.block_sums)
    out += "block " + std::to_string(k) + " sum " + num(sum) + "\n";
  if (report.has_fit) {
    out += "fitted_exponent " + num(report.fit.fitted_exponent) + "\n";
    out += "eta_hat " + num(report.fit.eta_hat) + "\n";
    out += "residual " + num(report.fit.residual) + "\n";
    out += "used_blocks " + std::to_string(report.fit.used_blocks) + "\n";
    out += "zero_blocks " + join(report.fit.zero_block_ks) + "\n";
  }
  return out;
}

Rendering render_correlation(const CorrelationReport& report) {
  return {plain_correlation(report), report_csv(report),
          json::parse(report_json(report))};
}

json fit_json(const FitResult& fit) {
  return json{{"fitted_exponent", fit.fitted_exponent},
              {"eta_hat", fit.eta_hat},
              {"residual", fit.residual},
              {"used_blocks", fit.used_blocks},
              {"zero_block_ks", fit.zero_block_ks}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeckendorf digit-sum toolkit"};
  app.require_subcommand(1);

  std::string format = "plain";
  std::string output_path;
  int threads = 0;
  std::uint64_t seed = 1;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"plain", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", output_path, "write output to this file");
  app.add_option("--threads", threads,
                 "worker count (0 = ZECKPHI_THREADS or hardware default)")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for sampled cross-checks")
      ->capture_default_str();

  Rendering out;
  int verification_rc = 0;

  // ---------------------------------------------------------------- zeck --
  auto* zeck = app.add_subcommand("zeck", "Zeckendorf expansions and digits");
  zeck->require_subcommand(1);
  zeck->fallthrough();

  std::uint64_t zeck_n = 0;
  auto* encode = zeck->add_subcommand("encode", "expansion indices of n");
  encode->fallthrough();
  encode->add_option("n", zeck_n, "value to expand")->required();
  encode->callback([&] {
    const auto rep = zeck_encode(zeck_n);
    std::string csv = "index\n";
    for (int i : rep.indices) csv += std::to_string(i) + "\n";
    out = {join(rep.indices) + "\n", csv,
           json{{"n", zeck_n}, {"indices", rep.indices}}};
  });

  std::vector<int> decode_indices;
  auto* decode = zeck->add_subcommand("decode", "value of an index list");
  decode->fallthrough();
  decode->add_option("--indices", decode_indices, "descending digit indices")
      ->required()
      ->delimiter(',');
  decode->callback([&] {
    const std::uint64_t value = zeck_decode(ZeckRep{decode_indices});
    out = {std::to_string(value) + "\n",
           rows_csv({{"value", std::to_string(value)}}),
           json{{"indices", decode_indices}, {"value", value}}};
  });

  auto* sdigits = zeck->add_subcommand("sdigits", "number of digits of n");
  sdigits->fallthrough();
  sdigits->add_option("n", zeck_n, "input value")->required();
  sdigits->callback([&] {
    const int s = s_phi(zeck_n);
    out = {std::to_string(s) + "\n", rows_csv({{"value", std::to_string(s)}}),
           json{{"n", zeck_n}, {"sdigits", s}}};
  });

  auto* shift = zeck->add_subcommand("shift", "digit shift S(n)");
  shift->fallthrough();
  shift->add_option("n", zeck_n, "input value")->required();
  shift->callback([&] {
    const std::uint64_t shifted = shift_S(zeck_n);
    out = {std::to_string(shifted) + "\n",
           rows_csv({{"value", std::to_string(shifted)}}),
           json{{"n", zeck_n}, {"shifted", shifted}}};
  });

  // ----------------------------------------------------------------- seq --
  auto* seq = app.add_subcommand("seq", "digit-derived sequences");
  seq->require_subcommand(1);
  seq->fallthrough();

  std::uint64_t seq_count = 0;
  auto* parity = seq->add_subcommand("parity", "digit-sum parities from 0");
  parity->fallthrough();
  parity->add_option("--count", seq_count, "how many terms")->required();
  parity->callback([&] {
    const auto values = parity_prefix(seq_count);
    std::string csv = "n,parity\n";
    for (std::size_t n = 0; n < values.size(); ++n)
      csv += std::to_string(n) + "," + std::to_string(values[n]) + "\n";
    out = {join(values) + "\n", csv,
           json{{"count", seq_count}, {"values", values}}};
  });

  std::string fibword_route = "formula";
  auto* fibword = seq->add_subcommand("fibword", "golden rotation word from 1");
  fibword->fallthrough();
  fibword->add_option("--count", seq_count, "how many terms")->required();
  fibword->add_option("--route", fibword_route, "evaluation route")
      ->check(CLI::IsMember({"formula", "morphism"}))
      ->capture_default_str();
  fibword->callback([&] {
    std::vector<int> values;
    values.reserve(seq_count);
    if (fibword_route == "formula") {
      for (std::uint64_t n = 1; n <= seq_count; ++n)
        values.push_back(fibonacci_word(n));
    } else {
      FixedPointStream stream(fibonacci_morphism());
      for (std::uint64_t n = 1; n <= seq_count; ++n)
        values.push_back(stream.letter_at(n - 1) - '0');
    }
    std::string csv = "n,letter\n";
    for (std::size_t i = 0; i < values.size(); ++i)
      csv += std::to_string(i + 1) + "," + std::to_string(values[i]) + "\n";
    out = {join(values) + "\n", csv,
           json{{"count", seq_count},
                {"route", fibword_route},
                {"values", values}}};
  });

  int kernel_k = 2;
  std::vector<int> kernel_lambdas;
  std::uint64_t kernel_horizon = 10'000;
  auto* kkernel =
      seq->add_subcommand("kkernel", "distinctness of power subsequences");
  kkernel->fallthrough();
  kkernel->add_option("--k", kernel_k, "subsequence base")
      ->capture_default_str();
  kkernel->add_option("--lambdas", kernel_lambdas,
                      "exponents to compare pairwise (default 0,1,2,3)")
      ->delimiter(',');
  kkernel->add_option("--horizon", kernel_horizon, "search bound")
      ->capture_default_str();
  kkernel->callback([&] {
    if (kernel_lambdas.empty()) kernel_lambdas = {0, 1, 2, 3};
    const auto witnesses =
        kkernel_distinctness(kernel_k, kernel_lambdas, kernel_horizon);
    std::string plain, csv = "lambda1,lambda2,n,found\n";
    json rows = json::array();
    for (const auto& w : witnesses) {
      if (!w.found) verification_rc = 2;
      plain += std::to_string(w.lambda1) + " " + std::to_string(w.lambda2) +
               " " + (w.found ? std::to_string(w.n) : "none") + "\n";
      csv += std::to_string(w.lambda1) + "," + std::to_string(w.lambda2) +
             "," + std::to_string(w.n) + "," + (w.found ? "true" : "false") +
             "\n";
      rows.push_back(json{{"lambda1", w.lambda1},
                          {"lambda2", w.lambda2},
                          {"n", w.n},
                          {"found", w.found}});
    }
    out = {plain, csv, json{{"k", kernel_k}, {"witnesses", rows}}};
  });

  // ------------------------------------------------------------------ qa --
  auto* qa = app.add_subcommand("qa", "quasi-additivity checks");
  qa->require_subcommand(1);
  qa->fallthrough();

  std::uint64_t qa_p = 2, qa_q = 3, qa_m = 2;
  int qa_r = -1, qa_rmax = 8;
  std::uint64_t qa_bound = 10'000, qa_horizon = 1'000'000;
  std::string qa_filter = "separated";

  auto* radius = qa->add_subcommand("radius", "smallest clean radius");
  radius->fallthrough();
  radius->add_option("--p", qa_p, "smaller multiplier")->capture_default_str();
  radius->add_option("--q", qa_q, "larger multiplier")->capture_default_str();
  radius->add_option("--bound", qa_bound, "test bound")->capture_default_str();
  radius->add_option("--rmax", qa_rmax, "largest radius tried")
      ->capture_default_str();
  radius->callback([&] {
    const auto report =
        min_quasi_additive_radius(qa_p, qa_q, qa_bound, qa_rmax, false,
                                  threads);
    if (!report.found) verification_rc = 2;
    const Rows rows = {
        {"found", report.found ? "true" : "false"},
        {"radius", std::to_string(report.r)},
        {"analytic_radius", std::to_string(report.analytic_r)},
        {"pairs_tested", std::to_string(report.pairs_tested)},
        {"shifts_tested", std::to_string(report.shifts_tested)}};
    out = {rows_plain(rows), rows_csv(rows),
           json{{"found", report.found},
                {"radius", report.r},
                {"analytic_radius", report.analytic_r},
                {"pairs_tested", report.pairs_tested},
                {"shifts_tested", report.shifts_tested}}};
  });

  auto* qa_check = qa->add_subcommand("check", "both identities at a radius");
  qa_check->fallthrough();
  qa_check->add_option("--p", qa_p, "smaller multiplier")
      ->capture_default_str();
  qa_check->add_option("--q", qa_q, "larger multiplier")
      ->capture_default_str();
  qa_check->add_option("--r", qa_r, "radius (default: analytic)")
      ->capture_default_str();
  qa_check->add_option("--bound", qa_bound, "test bound")
      ->capture_default_str();
  qa_check->callback([&] {
    PqSpec spec{qa_p, qa_q, qa_r >= 0 ? qa_r : analytic_radius(qa_q), 2};
    const auto pairs = check_separated_additivity(spec, qa_bound, threads);
    const auto shifts = check_shift_compatibility(spec, qa_bound, threads);
    if (!pairs.empty() || !shifts.empty()) verification_rc = 2;
    Rows rows = {{"radius", std::to_string(spec.r)},
                 {"pair_violations", std::to_string(pairs.size())},
                 {"shift_violations", std::to_string(shifts.size())}};
    json j{{"radius", spec.r},
           {"pair_violations", pairs.size()},
           {"shift_violations", shifts.size()}};
    if (!pairs.empty()) {
      rows.push_back({"first_pair",
                      std::to_string(pairs[0].n1) + "+" +
                          std::to_string(pairs[0].n2)});
      j["first_pair"] = json{{"n1", pairs[0].n1},
                             {"n2", pairs[0].n2},
                             {"f_sum", pairs[0].f_sum},
                             {"f_parts", pairs[0].f_parts}};
    }
    if (!shifts.empty()) {
      rows.push_back({"first_shift", std::to_string(shifts[0].n)});
      j["first_shift"] = json{{"n", shifts[0].n},
                              {"f_n", shifts[0].f_n},
                              {"f_shift", shifts[0].f_shift}};
    }
    out = {rows_plain(rows), rows_csv(rows), j};
  });

  auto* witness = qa->add_subcommand("witness", "parity witnesses for f");
  witness->fallthrough();
  witness->add_option("--p", qa_p, "smaller multiplier")
      ->capture_default_str();
  witness->add_option("--q", qa_q, "larger multiplier")
      ->capture_default_str();
  witness->add_option("--m", qa_m, "modulus")->capture_default_str();
  witness->add_option("--r", qa_r, "radius (default: analytic)")
      ->capture_default_str();
  witness->add_option("--horizon", qa_horizon, "search bound")
      ->capture_default_str();
  witness->add_option("--filter", qa_filter, "witness class")
      ->check(CLI::IsMember({"unconstrained", "separated", "lowblock"}))
      ->capture_default_str();
  witness->callback([&] {
    PqSpec spec{qa_p, qa_q, qa_r >= 0 ? qa_r : analytic_radius(qa_q), qa_m};
    const WitnessFilter filter =
        qa_filter == "unconstrained" ? WitnessFilter::kUnconstrained
        : qa_filter == "separated"   ? WitnessFilter::kSeparated
                                     : WitnessFilter::kSeparatedLowBlock;
    const auto report = find_parity_witnesses(spec, qa_horizon, filter);
    if (!report.found_zero || !report.found_nonzero) verification_rc = 2;
    const auto add = [](Rows& rows, json& j, const std::string& label,
                        bool found, const Witness& w) {
      if (!found) {
        rows.push_back({label, "none"});
        j[label] = nullptr;
        return;
      }
      rows.push_back({label + "_n", std::to_string(w.n)});
      rows.push_back({label + "_f", std::to_string(w.f)});
      j[label] = json{{"n", w.n},
                      {"indices", w.indices},
                      {"f", w.f},
                      {"f_mod_m", w.f_mod_m}};
    };
    Rows rows = {{"radius", std::to_string(spec.r)},
                 {"scanned", std::to_string(report.scanned)}};
    json j{{"radius", spec.r}, {"scanned", report.scanned}};
    add(rows, j, "zero_residue", report.found_zero, report.zero);
    add(rows, j, "nonzero_residue", report.found_nonzero, report.nonzero);
    out = {rows_plain(rows), rows_csv(rows), j};
  });

  // -------------------------------------------------------------- genfun --
  auto* genfun = app.add_subcommand("genfun", "block generating functions");
  genfun->require_subcommand(1);
  genfun->fallthrough();

  std::uint64_t gf_p = 2, gf_q = 3;
  int gf_r = -1, gf_K = 25, gf_z = 1, gf_kmax = 60;
  double gf_tol = 1e-9;
  std::string gf_kind = "block";
  std::vector<int> gf_L;
  std::vector<double> gf_moduli;

  auto* series = genfun->add_subcommand("series", "truncated block series");
  series->fallthrough();
  series->add_option("--kind", gf_kind, "series family")
      ->check(CLI::IsMember({"anchored", "indecomposable", "anchored-offset",
                             "indecomposable-offset", "block"}))
      ->capture_default_str();
  series->add_option("--p", gf_p, "smaller multiplier")->capture_default_str();
  series->add_option("--q", gf_q, "larger multiplier")->capture_default_str();
  series->add_option("--r", gf_r, "radius (default: analytic)")
      ->capture_default_str();
  series->add_option("--K", gf_K, "truncation order")->capture_default_str();
  series->add_option("--L", gf_L, "offset set")->delimiter(',');
  series->callback([&] {
    PqSpec spec{gf_p, gf_q, gf_r >= 0 ? gf_r : analytic_radius(gf_q), 2};
    const SeriesKind kind =
        gf_kind == "anchored"              ? SeriesKind::kAnchored
        : gf_kind == "indecomposable"      ? SeriesKind::kIndecomposable
        : gf_kind == "anchored-offset"     ? SeriesKind::kAnchoredOffset
        : gf_kind == "indecomposable-offset"
            ? SeriesKind::kIndecomposableOffset
            : SeriesKind::kBlockDirect;
    const auto series_out =
        build_series(kind, spec, OffsetSet{gf_L}, gf_K, threads);
    std::string plain, csv = "k,j,coefficient\n";
    json coeffs = json::array();
    for (int k = 0; k <= series_out.K; ++k) {
      const auto& poly = series_out.coeffs[static_cast<std::size_t>(k)].c;
      plain += std::to_string(k) + ":";
      for (std::size_t d = 0; d < poly.size(); ++d) {
        plain += " " + std::to_string(poly[d]);
        if (poly[d] != 0)
          csv += std::to_string(k) + "," + std::to_string(d) + "," +
                 std::to_string(poly[d]) + "\n";
      }
      plain += "\n";
      coeffs.push_back(poly);
    }
    out = {plain, csv,
           json{{"kind", gf_kind},
                {"K", series_out.K},
                {"radius", spec.r},
                {"coefficients", coeffs}}};
  });

  auto* identity = genfun->add_subcommand(
      "identity", "direct block series vs rational form");
  identity->fallthrough();
  identity->add_option("--p", gf_p, "smaller multiplier")
      ->capture_default_str();
  identity->add_option("--q", gf_q, "larger multiplier")
      ->capture_default_str();
  identity->add_option("--r", gf_r, "radius (default: analytic)")
      ->capture_default_str();
  identity->add_option("--K", gf_K, "truncation order")->capture_default_str();
  identity->add_option("--z", gf_z, "evaluation point")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  identity->add_option("--L", gf_L, "offset set")->delimiter(',');
  identity->callback([&] {
    PqSpec spec{gf_p, gf_q, gf_r >= 0 ? gf_r : analytic_radius(gf_q), 2};
    const auto report =
        verify_identity(spec, OffsetSet{gf_L}, gf_K, gf_z, threads);
    if (report.max_abs_discrepancy != 0) verification_rc = 2;
    const Rows rows = {
        {"max_abs_discrepancy", std::to_string(report.max_abs_discrepancy)},
        {"first_bad_k", std::to_string(report.first_bad_k)}};
    out = {rows_plain(rows), rows_csv(rows),
           json{{"max_abs_discrepancy", report.max_abs_discrepancy},
                {"first_bad_k", report.first_bad_k},
                {"lhs", report.lhs},
                {"rhs", report.rhs},
                {"radius", spec.r},
                {"z", gf_z}}};
  });

  auto* phir = genfun->add_subcommand("phir", "growth-rate root enclosure");
  phir->fallthrough();
  phir->add_option("--r", gf_r, "radius")->required();
  phir->add_option("--tol", gf_tol, "enclosure width")->capture_default_str();
  phir->callback([&] {
    const auto enclosure = phi_r_root(gf_r, gf_tol);
    if (!enclosure.sign_change_certified) verification_rc = 2;
    const Rows rows = {
        {"r", std::to_string(enclosure.r)},
        {"lo", enclosure.lo_decimal},
        {"hi", enclosure.hi_decimal},
        {"width", num(static_cast<double>(enclosure.hi - enclosure.lo))},
        {"certified", enclosure.sign_change_certified ? "true" : "false"}};
    out = {rows_plain(rows), rows_csv(rows),
           json{{"r", enclosure.r},
                {"lo", enclosure.lo_decimal},
                {"hi", enclosure.hi_decimal},
                {"width", static_cast<double>(enclosure.hi - enclosure.lo)},
                {"certified", enclosure.sign_change_certified}}};
  });

  auto* counts = genfun->add_subcommand("counts", "per-length block counts");
  counts->fallthrough();
  counts->add_option("--r", gf_r, "radius")->required();
  counts->add_option("--kmax", gf_kmax, "largest length")
      ->capture_default_str();
  counts->callback([&] {
    const auto report = check_count_growth(gf_r, gf_kmax);
    if (!report.matches_enumeration || !report.matches_closed_form ||
        !report.bound_violations.empty())
      verification_rc = 2;
    std::string csv = "k,indecomposable,anchored,closed_form\n";
    for (int k = 3; k <= report.k_max; ++k) {
      const auto i = static_cast<std::size_t>(k);
      csv += std::to_string(k) + "," +
             std::to_string(report.indecomposable_counts[i]) + "," +
             (report.anchored_counts.empty()
                  ? std::string("-")
                  : std::to_string(report.anchored_counts[i])) +
             "," + std::to_string(report.closed_form_counts[i]) + "\n";
    }
    const Rows rows = {
        {"growth_rate", num(report.growth_rate)},
        {"fitted_constant", num(report.fitted_constant)},
        {"fit_at", std::to_string(report.fit_at)},
        {"matches_enumeration", report.matches_enumeration ? "true" : "false"},
        {"matches_closed_form", report.matches_closed_form ? "true" : "false"},
        {"bound_violations", std::to_string(report.bound_violations.size())}};
    out = {rows_plain(rows), csv,
           json{{"r", report.r},
                {"k_max", report.k_max},
                {"growth_rate", report.growth_rate},
                {"fitted_constant", report.fitted_constant},
                {"fit_at", report.fit_at},
                {"matches_enumeration", report.matches_enumeration},
                {"matches_closed_form", report.matches_closed_form},
                {"bound_violations", report.bound_violations},
                {"indecomposable_counts", report.indecomposable_counts},
                {"anchored_counts", report.anchored_counts},
                {"closed_form_counts", report.closed_form_counts}}};
  });

  auto* zerofree = genfun->add_subcommand(
      "zerofree", "numerical probe of the denominator");
  zerofree->fallthrough();
  zerofree->add_option("--p", gf_p, "smaller multiplier")
      ->capture_default_str();
  zerofree->add_option("--q", gf_q, "larger multiplier")
      ->capture_default_str();
  zerofree->add_option("--r", gf_r, "radius (default: analytic)")
      ->capture_default_str();
  zerofree->add_option("--K", gf_K, "truncation order")->capture_default_str();
  zerofree->add_option("--moduli", gf_moduli, "probe circles (default 0.3,0.5)")
      ->delimiter(',');
  zerofree->callback([&] {
    PqSpec spec{gf_p, gf_q, gf_r >= 0 ? gf_r : analytic_radius(gf_q), 2};
    if (gf_moduli.empty()) gf_moduli = {0.3, 0.5};
    std::vector<long double> moduli(gf_moduli.begin(), gf_moduli.end());
    const auto report = probe_zero_free(spec, gf_K, moduli, threads);
    const Rows rows = {
        {"K", std::to_string(report.K)},
        {"x0", num(static_cast<double>(report.x0))},
        {"x0_term", num(static_cast<double>(report.x0_term))},
        {"x0_value", num(static_cast<double>(report.x0_value))},
        {"x0_distance", num(static_cast<double>(report.x0_distance))},
        {"increasing_in_order", report.increasing_in_order ? "true" : "false"},
        {"min_grid_distance",
         num(static_cast<double>(report.min_grid_distance))},
        {"max_alternating_abs",
         num(static_cast<double>(report.max_alternating_abs))},
        {"alternating_dominated",
         report.alternating_dominated ? "true" : "false"},
        {"tail_bound", num(static_cast<double>(report.tail_bound))}};
    json terms = json::array();
    for (const auto t : report.term_by_order)
      terms.push_back(static_cast<double>(t));
    out = {rows_plain(rows), rows_csv(rows),
           json{{"K", report.K},
                {"radius", spec.r},
                {"x0", static_cast<double>(report.x0)},
                {"x0_term", static_cast<double>(report.x0_term)},
                {"x0_value", static_cast<double>(report.x0_value)},
                {"x0_distance", static_cast<double>(report.x0_distance)},
                {"term_by_order", terms},
                {"increasing_in_order", report.increasing_in_order},
                {"min_grid_distance",
                 static_cast<double>(report.min_grid_distance)},
                {"max_alternating_abs",
                 static_cast<double>(report.max_alternating_abs)},
                {"alternating_dominated", report.alternating_dominated},
                {"tail_bound", static_cast<double>(report.tail_bound)}}};
  });

  // ---------------------------------------------------------------- corr --
  auto* corr = app.add_subcommand("corr", "correlation sums and decay fits");
  corr->require_subcommand(1);
  corr->fallthrough();

  std::string corr_weight = "moebius";
  std::string corr_primes_path, corr_input_path;
  std::uint64_t corr_N = 10'000;
  std::vector<std::uint64_t> corr_checkpoints;
  int corr_spot_checks = 256;
  std::uint64_t corr_p = 2, corr_q = 3;

  auto* theorem1 = corr->add_subcommand(
      "theorem1", "signed sum against a multiplicative weight");
  theorem1->fallthrough();
  theorem1->add_option("--weight", corr_weight, "weight function")
      ->check(CLI::IsMember({"moebius", "liouville", "custom"}))
      ->capture_default_str();
  theorem1->add_option("--N", corr_N, "horizon")->capture_default_str();
  theorem1->add_option("--checkpoints", corr_checkpoints,
                       "partial-sum checkpoints (default N)")
      ->delimiter(',');
  theorem1->add_option("--primes-json", corr_primes_path,
                       "custom weight: JSON object {\"p\": [re, im], ...}");
  theorem1->add_option("--spot-checks", corr_spot_checks,
                       "seeded sign cross-checks")
      ->capture_default_str();
  theorem1->callback([&] {
    MultiplicativeSpec weight;
    weight.kind = corr_weight == "moebius"     ? MultiplicativeKind::kMoebius
                  : corr_weight == "liouville" ? MultiplicativeKind::kLiouville
                                               : MultiplicativeKind::kCustom;
    if (!corr_primes_path.empty()) {
      if (weight.kind != MultiplicativeKind::kCustom)
        throw ValidationError("--primes-json requires --weight custom");
      std::ifstream in(corr_primes_path);
      if (!in) throw ValidationError("cannot read " + corr_primes_path);
      const auto parsed = json::parse(in);
      for (const auto& [key, value] : parsed.items())
        weight.prime_values[std::stoull(key)] = {value.at(0).get<double>(),
                                                 value.at(1).get<double>()};
    }
    if (corr_checkpoints.empty()) corr_checkpoints = {corr_N};
    const auto report = sum_theorem1(weight, corr_N, corr_checkpoints,
                                     threads, seed, corr_spot_checks);
    out = render_correlation(report);
  });

  auto* pq = corr->add_subcommand("pq", "signed sum of the two-multiplier f");
  pq->fallthrough();
  pq->add_option("--p", corr_p, "smaller multiplier")->capture_default_str();
  pq->add_option("--q", corr_q, "larger multiplier")->capture_default_str();
  pq->add_option("--N", corr_N, "horizon")->capture_default_str();
  pq->add_option("--checkpoints", corr_checkpoints,
                 "partial-sum checkpoints (default N)")
      ->delimiter(',');
  pq->callback([&] {
    if (corr_checkpoints.empty()) corr_checkpoints = {corr_N};
    const auto report =
        sum_pq(PqSpec{corr_p, corr_q, 0, 2}, corr_N, corr_checkpoints,
               threads);
    out = render_correlation(report);
  });

  auto* fit = corr->add_subcommand("fit", "decay exponent from block sums");
  fit->fallthrough();
  fit->add_option("--input", corr_input_path,
                  "CSV lines \"k,sum\"; only rows with 3 <= k <= 92 are "
                  "treated as block sums (checkpoint rows fall outside)")
      ->required();
  fit->callback([&] {
    std::ifstream in(corr_input_path);
    if (!in) throw ValidationError("cannot read " + corr_input_path);
    std::vector<std::pair<int, double>> blocks;
    std::string line;
    while (std::getline(in, line)) {
      int k = 0;
      double sum = 0;
      if (std::sscanf(line.c_str(), "%d,%lf", &k, &sum) == 2 && k >= 3 &&
          k <= FibTable::kMax64)
        blocks.emplace_back(k, sum);
    }
    const auto result = fit_decay_exponent(blocks);
    const Rows rows = {
        {"fitted_exponent", num(result.fitted_exponent)},
        {"eta_hat", num(result.eta_hat)},
        {"residual", num(result.residual)},
        {"used_blocks", std::to_string(result.used_blocks)},
        {"zero_blocks", join(result.zero_block_ks)}};
    out = {rows_plain(rows), rows_csv(rows), fit_json(result)};
  });

  // ------------------------------------------------------------- dispatch --
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 1;
  } catch (const InsufficientDataError& e) {
    std::cerr << "insufficient data: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string payload = format == "json"  ? out.j.dump(2) + "\n"
                              : format == "csv" ? out.csv
                                                : out.plain;
  if (!output_path.empty()) {
    std::ofstream sink(output_path);
    if (!sink) {
      std::cerr << "validation error: cannot write " << output_path << "\n";
      return 1;
    }
    sink << payload;
    if (!sink.good()) {
      std::cerr << "validation error: short write to " << output_path << "\n";
      return 1;
    }
  } else {
    std::cout << payload;
  }
  return verification_rc;
}
