// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "plic/io.hpp"
#include "plic/lemmas.hpp"
#include "plic/snake.hpp"

using namespace plic;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed2(double v) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << v;
  return o.str();
}

PLMap sym(std::vector<std::pair<const char*, const char*>> pts) {
  std::vector<Breakpoint> b;
  for (auto [x, y] : pts) b.push_back({Rational::parse(x), Rational::parse(y)});
  return PLMap(Domain::Symmetric, std::move(b));
}

PLMap zigzag() { return sym({{"-1", "1"}, {"-1/2", "-1/2"}, {"0", "0"}, {"1/2", "1/2"}, {"1", "-1"}}); }

InverseSystemPrefix zigzag_system() {
  InverseSystemPrefix sys;
  sys.maps.assign(12, zigzag());
  return sys;
}

const std::vector<StageState>& zigzag_stages() {
  static const std::vector<StageState> st = [] {
    InverseSystemPrefix sys = zigzag_system();
    std::vector<StageState> built;
    for (const char* d : {"1/2", "1/4"}) built.push_back(build_stage(sys, built, Rational::parse(d)));
    return built;
  }();
  return st;
}

Outcome lemma_suite() {
  auto t0 = Clock::now();
  auto tallies = lemmas::run_suite(20240601, 300);
  double secs = seconds_since(t0);
  bool ok = secs < 60;
  std::string bad;
  for (const auto& [name, t] : tallies) {
    if (!t.all_passed() || t.checked + t.vacuous < 300) {
      ok = false;
      bad += " " + name;
    }
  }
  const auto& c2 = tallies["compare_trunc.2"];
  return {ok, std::to_string(tallies.size()) + " lemmas, " + fixed2(secs) + "s, compare_trunc.2 exercised " +
                  std::to_string(c2.checked) + "/" + std::to_string(c2.checked + c2.vacuous) +
                  (bad.empty() ? "" : ", failing:" + bad)};
}

Outcome mesh_bound() {
  lemmas::Tallies t;
  std::size_t tight = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    auto rng = gen::case_rng(31, i);
    bool zig = i % 2 == 0;
    auto c = lemmas::mesh_preim_case(rng, t, zig);
    if (zig && c.bound <= Rational(2) * c.actual) ++tight;
  }
  const auto& m = t["mesh_preim_contour"];
  return {m.all_passed() && m.checked == 300 && tight > 0,
          std::to_string(m.passed) + "/" + std::to_string(m.checked) + " within bound, " + std::to_string(tight) +
              " zigzag cases tight within 2x"};
}

Outcome prop_b() {
  lemmas::Tallies t;
  std::size_t departures = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    auto rng = gen::case_rng(37, i);
    if (lemmas::comp_dep_case(rng, t)) ++departures;
  }
  const auto& c = t["comp_dep"];
  return {c.all_passed() && c.checked == 1000,
          std::to_string(c.passed) + "/1000 agree, " + std::to_string(departures) + " pairs were departures"};
}

Outcome same_contour_methods() {
  lemmas::Tallies t;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    auto rng = gen::case_rng(41, i);
    bool engineered = i % 3 == 0;
    if (lemmas::same_contour_case(rng, t, engineered) && engineered) ++positives;
  }
  const auto& s = t["same_contour"];
  return {s.all_passed() && s.checked == 300 && positives >= 50,
          std::to_string(s.passed) + "/300 agree, " + std::to_string(positives) + " engineered positives"};
}

Outcome factorization() {
  std::size_t exact = 0, nolift = 0, other = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    auto rng = gen::case_rng(43, i);
    PLMap f = gen::random_radial_map(rng, 8, 8);
    try {
      PLMap t = radial_contour_factor(f);
      auto cert = lift_through(t, f);
      if (compose(t, cert.s) == f && cert.s(Rational(0)).is_zero()) ++exact;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoLift)
        ++nolift;
      else
        ++other;
    }
  }
  return {exact == 300 && nolift == 0,
          std::to_string(exact) + "/300 exact, NoLift " + std::to_string(nolift) + ", other errors " +
              std::to_string(other)};
}

Outcome bridged() {
  std::size_t ok = 0, exhausted = 0, other = 0, max_explored = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    auto rng = gen::case_rng(47, i);
    auto tr = gen::bridged_triple(rng);
    try {
      auto r = bridged_s(tr.f1, tr.f2, tr.f3, 1000000);
      max_explored = std::max(max_explored, r.explored);
      bool post1 = compose(radial_contour_factor(tr.f1), r.s) == compose(tr.f1, tr.f2);
      bool post2 = no_negative(orientation_census(compose(r.s, radial_contour_factor(tr.f3))));
      if (post1 && post2) ++ok;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SearchExhausted)
        ++exhausted;
      else
        ++other;
    }
  }
  return {ok == 100 && exhausted == 0,
          std::to_string(ok) + "/100 meet both postconditions, SearchExhausted " + std::to_string(exhausted) +
              ", other errors " + std::to_string(other) + ", max nodes " + std::to_string(max_explored)};
}

Outcome zigzag_claims() {
  auto t0 = Clock::now();
  const auto& st = zigzag_stages();
  auto r = verify_claims(zigzag_system(), st);
  double secs = seconds_since(t0);
  bool ok = r.pass() && st.size() == 2 && st[0].k == 1 && st[1].k == 3 && secs < 300;
  return {ok, "claims " + std::string(r.claim1.pass ? "1" : "-") + (r.claim2 && r.claim2->pass ? "2" : "-") +
                  (r.claim3_pass ? "3" : "-") + " pass, " + fixed2(secs) + "s"};
}

Outcome self_comparison() {
  std::size_t zero = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    auto rng = gen::case_rng(53, i);
    auto sys = gen::random_system(rng, 8);
    auto r = mioduszewski_report(sys, sys, std::vector<Rational>(8, Rational(0)));
    bool all_zero = r.pass;
    for (const auto& e : r.entries) all_zero = all_zero && e.dev1.is_zero() && e.dev2.is_zero();
    if (all_zero) ++zero;
  }
  return {zero == 50, std::to_string(zero) + "/50 systems with all-zero deviations"};
}

Outcome snake() {
  SnakeSpec spec;
  spec.system = io::system_from_json(io::read_json_file(std::string(PLIC_SAMPLES_DIR) + "/system_positive3.json"));
  spec.depth = 3;
  spec.reflect_left = true;
  auto r = snake_embedding(spec);
  std::ifstream in(std::string(PLIC_GOLDEN_DIR) + "/snake_depth3.svg");
  std::stringstream golden;
  golden << in.rdbuf();
  bool stable = r.svg == golden.str() && snake_embedding(spec).svg == r.svg;
  return {r.simple && r.access_clear && stable,
          std::string(r.simple ? "simple" : "not simple") + ", access " + (r.access_clear ? r.access_side : "blocked") +
              ", golden " + (stable ? "matches" : "differs")};
}

Outcome negative_controls() {
  auto st = zigzag_stages();
  st[0].s_bridge = st[0].s_bridge.negation();
  auto r = verify_claims(zigzag_system(), st);
  bool claim3_caught = !r.claim3_pass && r.claim3_witness.has_value();

  PLMap f = sym({{"-1", "-1/2"}, {"-1/2", "1/2"}, {"0", "0"}, {"1/4", "3/4"}, {"1/2", "1/4"}, {"3/4", "1"}, {"1", "1/2"}});
  FiniteGrid V(std::vector<Rational>{Rational(-1, 2), Rational(0), Rational(1, 4), Rational(1, 2)});
  PLMap t = truncate(f, V);
  Rational top(0);
  for (const auto& c : contour_points(right_half(t))) top = max(top, c.value);
  bool below = Rational(1, 4) < top;
  bool trunc_caught = below && truncate(f, V.without(Rational(1, 4))) != t;
  std::string witness =
      r.claim3_witness ? " (" + r.claim3_witness->first.str() + ", " + r.claim3_witness->second.str() + ")" : "";
  return {claim3_caught && trunc_caught, std::string("negated bridge ") + (claim3_caught ? "fails claim 3" : "passes") +
                                             witness + ", thinner grid " +
                                             (trunc_caught ? "changes truncation" : "leaves truncation unchanged")};
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"lemma suite", lemma_suite},
      {"mesh of contour preimage", mesh_bound},
      {"composition departures", prop_b},
      {"same contour methods", same_contour_methods},
      {"contour factorization", factorization},
      {"bridging lift", bridged},
      {"zigzag system claims", zigzag_claims},
      {"self comparison", self_comparison},
      {"snake depth 3", snake},
      {"negative controls", negative_controls},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
