#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "aspec/corpus.hpp"
#include "aspec/lie.hpp"
#include "aspec/special.hpp"
#include "aspec/verdict.hpp"

namespace aspec {

struct Record {
  std::string scenario;
  std::string check;
  Status status = Status::pass;
  std::vector<std::string> witnesses;
  nlohmann::json values = nlohmann::json::object();
  double timing_ms = 0;

  friend bool operator==(const Record&, const Record&) = default;
};

struct Report {
  std::vector<Record> records;

  friend bool operator==(const Report&, const Report&) = default;
};

inline constexpr int kReportVersion = 1;

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json to_json(const Record& r, bool timings = true) {
  nlohmann::json j = {{"scenario", r.scenario},
                      {"check", r.check},
                      {"status", to_string(r.status)},
                      {"witnesses", r.witnesses},
                      {"values", r.values}};
  if (timings) j["timing_ms"] = r.timing_ms;
  return j;
}

inline nlohmann::json to_json(const Report& report, bool timings = true) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) records.push_back(to_json(r, timings));
  return {{"report_version", kReportVersion}, {"records", records}};
}

inline Report report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("report_version").get<int>() != kReportVersion) throw InputError("unsupported report version");
    Report report;
    for (const auto& rj : j.at("records")) {
      Record r;
      r.scenario = rj.at("scenario").get<std::string>();
      r.check = rj.at("check").get<std::string>();
      const auto status = rj.at("status").get<std::string>();
      r.status = status_from_string(status);
      if (to_string(r.status) != status) throw InputError("unknown status \"" + status + "\"");
      r.witnesses = rj.at("witnesses").get<std::vector<std::string>>();
      r.values = rj.at("values");
      r.timing_ms = rj.value("timing_ms", 0.0);
      report.records.push_back(std::move(r));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

inline Report parse_report(std::string_view text) {
  try {
    return report_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
}

enum class ReportFormat { json, text };

inline std::string emit_text(const Report& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %-24s %-15s %10s\n", "SCENARIO", "CHECK", "STATUS", "TIME_MS");
  out << line;
  for (const auto& r : report.records) {
    std::snprintf(line, sizeof line, "%-24s %-24s %-15s %10.1f\n", r.scenario.c_str(), r.check.c_str(),
                  std::string(to_string(r.status)).c_str(), r.timing_ms);
    out << line;
    for (const auto& w : r.witnesses) out << "    ! " << w << '\n';
  }
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& r : report.records) ++counts[static_cast<int>(r.status)];
  out << "pass " << counts[0] << ", fail " << counts[1] << ", not-applicable " << counts[2] << ", error " << counts[3]
      << '\n';
  return out.str();
}

/// JSON output is pretty-printed with a trailing newline; timings can be omitted for diffing.
inline std::string emit(const Report& report, ReportFormat format, bool timings = true) {
  if (format == ReportFormat::text) return emit_text(report);
  return to_json(report, timings).dump(2) + "\n";
}

/// 0 when no record failed or errored, 1 otherwise.
inline int exit_code(const Report& report) {
  for (const auto& r : report.records)
    if (r.status == Status::fail || r.status == Status::error) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Checks

namespace detail {

/// Folds labelled sub-verdicts into one; all-not-applicable stays not-applicable.
inline Verdict combine(const std::vector<std::pair<std::string, Verdict>>& subs) {
  Verdict out;
  nlohmann::json runs = nlohmann::json::array();
  bool applicable = false;
  for (const auto& [label, v] : subs) {
    nlohmann::json entry = v.values;
    entry["label"] = label;
    entry["status"] = to_string(v.status);
    runs.push_back(std::move(entry));
    if (v.status != Status::not_applicable) applicable = true;
    if (v.status == Status::error) out.status = Status::error;
    else if (v.status == Status::fail && out.status != Status::error) out.status = Status::fail;
    for (const auto& w : v.witnesses) out.witnesses.push_back(label + ": " + w);
  }
  if (!applicable) {
    out.status = Status::not_applicable;
    out.values["reason"] = subs.empty() ? "no instance to check" : "no applicable instance";
  }
  out.values["runs"] = std::move(runs);
  return out;
}

inline std::string label_k(const char* name, std::size_t k) { return std::string(name) + "=" + std::to_string(k); }

}  // namespace detail

/// The group, action and derived objects of one scenario, computed on demand.
class ScenarioContext {
 public:
  ScenarioContext(const Scenario& scenario, std::size_t cap)
      : scenario_(scenario), cap_(cap), action_(scenario.build(cap)), G_(Subgroup::whole(action_.target())) {}

  const Scenario& scenario() const noexcept { return scenario_; }
  const CoprimeAction& action() const noexcept { return action_; }
  const Subgroup& G() const noexcept { return G_; }

  /// Largest family degree examined for a flavor.
  std::size_t max_degree(FamilyKind kind) const {
    std::size_t k = scenario_.params.d.value_or(max_checked_degree(G_, kind));
    return std::min(k, kMaxSpecialDegree);
  }

  FamilyTower& tower(FamilyKind kind) {
    auto& slot = kind == FamilyKind::derived ? derived_ : gamma_;
    if (!slot) slot = std::make_unique<FamilyTower>(action_, kind);
    return *slot;
  }

  std::vector<std::uint64_t> primes() const {
    if (!scenario_.params.primes.empty()) {
      std::vector<std::uint64_t> out;
      for (auto p : scenario_.params.primes)
        if (G_.order() % p == 0) out.push_back(p);
      return out;
    }
    return prime_divisors(G_.order());
  }

  const Subgroup& sylow_of_G(std::uint64_t p) {
    auto it = sylows_.find(p);
    if (it == sylows_.end()) it = sylows_.emplace(p, invariant_sylow(action_, G_, p)).first;
    return it->second;
  }

  struct LieTarget {
    std::uint64_t p;
    CoprimeAction action;
    std::optional<GradedLieAlgebra> algebra;
    std::string build_error;
  };

  /// G itself when it is a p-group, otherwise its A-invariant Sylow subgroups.
  std::vector<LieTarget>& lie_targets() {
    if (lie_) return *lie_;
    lie_.emplace();
    auto ps = prime_divisors(G_.order());
    for (auto p : primes()) {
      CoprimeAction local = ps.size() == 1 ? action_ : restrict_action(action_, sylow_of_G(p));
      LieTarget t{p, local, std::nullopt, {}};
      try {
        t.algebra.emplace(graded_algebra(jlz_series(Subgroup::whole(t.action.target()), static_cast<std::uint32_t>(p))));
      } catch (const std::exception& e) {
        t.build_error = e.what();
      }
      lie_->push_back(std::move(t));
    }
    return *lie_;
  }

  Verdict run(const std::string& check) {
    auto it = cache_.find(check);
    if (it != cache_.end()) return it->second;
    Verdict v = dispatch(check);
    cache_.emplace(check, v);
    return v;
  }

 private:
  Verdict dispatch(const std::string& check) {
    if (check == "fg2") return fg2();
    if (check == "quotient_centralizer") return quotient_centralizer();
    if (check == "invariant_sylow") return invariant_sylow_check();
    if (check == "simple_action_cyclic") return simple_action_cyclic_check(action_);
    if (check.rfind("prop32_", 0) == 0) return prop(FamilyKind::derived, std::stoi(check.substr(7)));
    if (check.rfind("prop72_", 0) == 0) return prop(FamilyKind::gamma, std::stoi(check.substr(7)));
    if (check == "sylow_generation") return sylow_generation(FamilyKind::derived);
    if (check == "sylow_generation_gamma") return sylow_generation(FamilyKind::gamma);
    if (check == "exponent_report") return exponent_report(FamilyKind::derived);
    if (check == "exponent_report_gamma") return exponent_report(FamilyKind::gamma);
    if (check == "lie_series") return lie_series();
    if (check == "lazard") return lazard();
    if (check == "centralizer_equalities") return centralizer_equalities_check();
    if (check == "powerful_exponent") return powerful_exponent();
    if (check == "expected_values") return expected_values();
    throw InputError("unknown check \"" + check + "\"");
  }

  /// Subgroups on which generation by centralizers is sampled.
  std::vector<Subgroup> fg2_samples() const {
    std::vector<Subgroup> s{G_};
    for (AVec a : action_.nontrivial_elements()) s.push_back(fixed_points(action_, a));
    auto d = series(G_, SeriesKind::derived);
    auto l = series(G_, SeriesKind::lower_central);
    s.insert(s.end(), d.begin(), d.end());
    s.insert(s.end(), l.begin(), l.end());
    return distinct(std::move(s));
  }

  Verdict fg2() {
    if (action_.r() < 2) return Verdict::not_applicable("rank r < 2");
    std::vector<std::pair<std::string, Verdict>> subs;
    for (const auto& H : fg2_samples()) subs.emplace_back("|H|=" + std::to_string(H.order()), fg2_check(action_, H));
    Verdict v = detail::combine(subs);
    std::vector<std::size_t> orders;
    for (const auto& C : maximal_centralizers(action_)) orders.push_back(C.order());
    std::sort(orders.begin(), orders.end());
    v.values["centralizer_orders"] = orders;
    v.values["centralizer_of_A"] = fixed_points(action_, span(action_.A(), action_.nontrivial_elements())).order();
    return v;
  }

  Verdict quotient_centralizer() {
    std::vector<std::pair<std::string, Verdict>> subs;
    for (const auto& N : series_normal_subgroups(G_)) {
      if (!is_invariant(action_, N)) continue;
      subs.emplace_back("|N|=" + std::to_string(N.order()), quotient_action_check(action_, N));
    }
    return detail::combine(subs);
  }

  Verdict invariant_sylow_check() {
    std::vector<std::pair<std::string, Verdict>> subs;
    Subgroup CA = fixed_points(action_, span(action_.A(), action_.nontrivial_elements()));
    for (auto p : primes()) {
      Verdict v;
      const Subgroup& P = sylow_of_G(p);
      v.values["order"] = P.order();
      if (P.order() != p_part(G_.order(), p)) v.fail("order " + std::to_string(P.order()) + " is not the full p-part");
      if (!is_invariant(action_, P)) v.fail("returned subgroup is not A-invariant");
      // A p-subgroup of C_G(A) is A-invariant, so some invariant Sylow subgroup contains it.
      Subgroup Q = sylow(CA, p);
      Subgroup P2 = invariant_sylow(action_, G_, p, Q);
      v.values["fixed_p_subgroup_order"] = Q.order();
      if (!Q.is_subgroup_of(P2) || !is_invariant(action_, P2) || P2.order() != P.order())
        v.fail("no invariant Sylow subgroup containing the fixed p-subgroup");
      subs.emplace_back("p=" + std::to_string(p), std::move(v));
    }
    return detail::combine(subs);
  }

  Verdict prop(FamilyKind kind, int item) {
    if (action_.r() < 2) return Verdict::not_applicable("rank r < 2");
    FamilyTower& tower = this->tower(kind);
    const std::size_t base = tower.base_degree();
    const std::size_t top = max_degree(kind);
    std::vector<std::pair<std::string, Verdict>> subs;
    for (std::size_t k = base; k <= top; ++k) {
      if (kind == FamilyKind::derived && item == 2) {
        if (k + 1 > kMaxSpecialDegree) continue;
        subs.emplace_back(detail::label_k("k", k) + ",K=G", prop32_check(tower, 2, k, {G_, std::nullopt}));
        for (auto p : primes())
          subs.emplace_back(detail::label_k("k", k) + ",K=P" + std::to_string(p),
                            prop32_check(tower, 2, k, {sylow_of_G(p), std::nullopt}));
        continue;
      }
      Verdict v = kind == FamilyKind::derived ? prop32_check(tower, item, k) : prop72_check(tower, item, k);
      subs.emplace_back(detail::label_k("k", k), std::move(v));
    }
    return detail::combine(subs);
  }

  Verdict sylow_generation(FamilyKind kind) {
    const std::size_t r = action_.r();
    if (r < 2) return Verdict::not_applicable("rank r < 2");
    std::vector<std::pair<std::string, Verdict>> subs;
    if (kind == FamilyKind::gamma) {
      if (r - 1 > kMaxSpecialDegree) return Verdict::not_applicable("degree r - 1 above the degree cap");
      subs.emplace_back(detail::label_k("d", r - 1), sylow_generation_check(tower(kind), r - 1));
    } else {
      for (std::size_t d = 0; (std::size_t{1} << d) <= r - 1 && d <= max_degree(kind); ++d)
        subs.emplace_back(detail::label_k("d", d), sylow_generation_check(tower(kind), d));
    }
    return detail::combine(subs);
  }

  Verdict exponent_report(FamilyKind kind) {
    const std::size_t r = action_.r();
    if (r < 2) return Verdict::not_applicable("rank r < 2");
    std::vector<std::pair<std::string, Verdict>> subs;
    if (kind == FamilyKind::gamma) {
      subs.emplace_back(detail::label_k("k", r - 1), exponent_instance_report(action_, 0, kind));
    } else {
      for (std::size_t d = 0; (std::size_t{1} << d) <= r - 1 && d <= max_degree(kind); ++d)
        subs.emplace_back(detail::label_k("d", d), exponent_instance_report(action_, d, kind));
    }
    return detail::combine(subs);
  }

  template <class F>
  Verdict over_lie_targets(F&& body) {
    std::vector<std::pair<std::string, Verdict>> subs;
    for (auto& t : lie_targets()) {
      Verdict v;
      if (!t.algebra) {
        v.status = Status::error;
        v.witnesses.push_back("algebra construction failed: " + t.build_error);
      } else {
        v = body(t);
      }
      subs.emplace_back("p=" + std::to_string(t.p), std::move(v));
    }
    return detail::combine(subs);
  }

  Verdict lie_series() {
    return over_lie_targets([](LieTarget& t) {
      const GradedLieAlgebra& L = *t.algebra;
      Verdict v = validate_np_series(L.series());
      v.values["p"] = t.p;
      v.values["orders"] = L.series().orders();
      v.values["dims"] = L.dims();
      std::size_t log = 0;
      for (std::size_t n = t.action.group().order(); n > 1; n /= t.p) ++log;
      v.values["log_order"] = log;
      if (L.dim() != log)
        v.fail("component dimensions sum to " + std::to_string(L.dim()) + ", expected " + std::to_string(log));
      Subspace Lp = lp_subalgebra(L);
      v.values["lp_dim"] = Lp.dim();
      return v;
    });
  }

  Verdict lazard() {
    return over_lie_targets([](LieTarget& t) { return lazard_check(*t.algebra); });
  }

  Verdict centralizer_equalities_check() {
    return over_lie_targets([](LieTarget& t) { return centralizer_equalities(*t.algebra, t.action); });
  }

  Verdict powerful_exponent() {
    std::vector<std::pair<std::string, Verdict>> subs;
    auto ps = prime_divisors(G_.order());
    for (auto p : primes()) {
      Subgroup P = ps.size() == 1 ? G_ : sylow_of_G(p);
      std::uint64_t e = 1;
      for (ElemId g : P.generators()) e = std::lcm(e, G_.group().element_order(g));
      subs.emplace_back("p=" + std::to_string(p), powerful_exponent_check(P, P.generators(), e));
    }
    return detail::combine(subs);
  }

  Verdict expected_values() {
    const auto& expected = scenario_.params.expected;
    if (expected.empty()) return Verdict::not_applicable("scenario pins no values");
    Verdict v;
    nlohmann::json checked = nlohmann::json::array();
    for (const auto& ev : expected) {
      Verdict source = run(ev.check);
      nlohmann::json entry = {{"check", ev.check}, {"pointer", ev.pointer}, {"expected", ev.value},
                              {"provenance", ev.provenance}};
      const std::string tag = ev.check + ev.pointer;
      if (source.status == Status::error) {
        v.fail(tag + ": source check errored");
      } else {
        nlohmann::json::json_pointer ptr(ev.pointer);
        if (!source.values.contains(ptr)) {
          v.fail(tag + ": value not reported");
        } else {
          entry["actual"] = source.values.at(ptr);
          if (entry["actual"] != ev.value) v.fail(tag + ": expected " + ev.value.dump() + ", got " + entry["actual"].dump());
        }
      }
      checked.push_back(std::move(entry));
    }
    v.values["checked"] = checked;
    return v;
  }

  const Scenario& scenario_;
  std::size_t cap_;
  CoprimeAction action_;
  Subgroup G_;
  std::unique_ptr<FamilyTower> derived_;
  std::unique_ptr<FamilyTower> gamma_;
  std::map<std::uint64_t, Subgroup> sylows_;
  std::optional<std::vector<LieTarget>> lie_;
  std::map<std::string, Verdict> cache_;
};

struct RunOptions {
  /// Checks to run; empty means each scenario's own list.
  std::vector<std::string> checks;
  std::size_t cap = kDefaultElementCap;
  std::size_t jobs = 1;
};

inline std::vector<std::string> resolve_checks(const Scenario& s, const RunOptions& opt) {
  std::vector<std::string> out = opt.checks.empty() ? s.checks : opt.checks;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Runs one scenario sequentially; any exception becomes an error record.
inline std::vector<Record> run_scenario(const Scenario& s, const RunOptions& opt) {
  using clock = std::chrono::steady_clock;
  const auto checks = resolve_checks(s, opt);
  std::vector<Record> out;
  std::unique_ptr<ScenarioContext> ctx;
  std::string setup_error;
  auto t0 = clock::now();
  try {
    ctx = std::make_unique<ScenarioContext>(s, opt.cap);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  const double setup_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  for (const auto& check : checks) {
    Record rec{s.name, check, Status::pass, {}, nlohmann::json::object(), 0};
    auto start = clock::now();
    if (!ctx) {
      rec.status = Status::error;
      rec.witnesses.push_back("scenario setup failed: " + setup_error);
      rec.timing_ms = setup_ms;
    } else {
      try {
        Verdict v = ctx->run(check);
        rec.status = v.status;
        rec.witnesses = std::move(v.witnesses);
        rec.values = std::move(v.values);
      } catch (const std::exception& e) {
        rec.status = Status::error;
        rec.witnesses.push_back(e.what());
      }
    }
    double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    if (ctx) rec.timing_ms = std::round(ms * 1000.0) / 1000.0;
    else rec.timing_ms = std::round(setup_ms * 1000.0) / 1000.0;
    if (rec.status == Status::fail && rec.witnesses.empty()) rec.witnesses.push_back("failed without a witness");
    out.push_back(std::move(rec));
  }
  return out;
}

/// Runs scenarios on a pool of `jobs` workers; the report is sorted by scenario, then check.
inline Report run_all(const std::vector<Scenario>& scenarios, const RunOptions& opt) {
  std::vector<std::vector<Record>> results(scenarios.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(opt.jobs, scenarios.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) results[i] = run_scenario(scenarios[i], opt);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  Report report;
  for (auto& rs : results)
    for (auto& r : rs) report.records.push_back(std::move(r));
  std::stable_sort(report.records.begin(), report.records.end(), [](const Record& a, const Record& b) {
    return std::tie(a.scenario, a.check) < std::tie(b.scenario, b.check);
  });
  return report;
}

}  // namespace aspec
