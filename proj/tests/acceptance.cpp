// Acceptance suite: one line per criterion, exit status 1 when any is red.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "homotope/errors.hpp"
#include "homotope/fiber.hpp"
#include "homotope/homological.hpp"
#include "homotope/linalg.hpp"
#include "homotope/nonassoc.hpp"
#include "homotope/structure.hpp"

using namespace homotope;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F101 = FieldSpec::prime(101);

struct Outcome {
  bool pass;
  std::string detail;
};

template <class... T>
std::string fmt(const char* f, T... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared by criteria 1 and 6.
std::vector<OracleTrial>& oracle_trials() {
  static std::vector<OracleTrial> trials;
  return trials;
}
double oracle_seconds = 0;

Outcome main_theorem() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t agree = 0;
  for (std::uint64_t s = 0; s < 210; ++s) {
    oracle_trials().push_back(oracle_trial(5000 + s, 8, Q));
    if (oracle_trials().back().agree()) ++agree;
  }
  oracle_seconds = seconds_since(t0);
  std::size_t wt = 0;
  for (const auto& t : oracle_trials()) wt += t.criterion;
  const std::size_t n = oracle_trials().size();
  return {agree == n && oracle_seconds <= 120.0,
          fmt("%zu/%zu agree (%zu well-tempered), %.1f s", agree, n, wt, oracle_seconds)};
}

Outcome matrix_corollary() {
  std::mt19937_64 rng(2);
  std::size_t ok = 0, total = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    AlgebraPtr m = share(matrix_algebra(n, Q));
    for (std::size_t r = 0; r <= n; ++r) {
      // diag(1^r, 0) and a two-sided unit translate of it
      Element d = m->zero();
      for (std::size_t i = 0; i < r; ++i) d += m->basis(i * n + i);
      Element u = m->one(), v = m->one();
      for (std::size_t i = 0; i + 1 < n; ++i) {
        u += Scalar(Q, static_cast<long>(rng() % 5) - 2) * m->basis(i * n + i + 1);
        v += Scalar(Q, static_cast<long>(rng() % 5) - 2) * m->basis((i + 1) * n + i);
      }
      for (const Element& delta : {d, m->multiply(m->multiply(u, d), v)}) {
        AugmentationModules mods = augmentation_modules(m, delta);
        bool wt = is_well_tempered_criterion(*m, delta) && is_projective(mods.b_plus_left) &&
                  is_projective(mods.b_plus_right);
        ++total;
        if (wt == (r > 0) && rank(m->mult_operator(delta, Side::Left)) == r * n) ++ok;
      }
    }
  }
  return {ok == total, fmt("%zu/%zu rank representatives in M_1, M_2, M_3", ok, total)};
}

Outcome commutative_corollary() {
  // deg f <= 4 over Q, including irreducible and repeated factors
  const std::vector<std::vector<long>> polys = {
      {0, 1},     {-1, 1},       {0, 0, 1},      {-1, 0, 1},     {1, 0, 1},        {0, -1, 1},
      {0, 0, 0, 1}, {0, -1, 0, 1}, {-2, 0, 0, 1},  {0, 0, -1, 1},  {1, 1, 1, 1},     {0, 0, 0, 0, 1},
      {-1, 0, 0, 0, 1}, {1, 0, 2, 0, 1}, {0, 0, -1, 0, 1}, {4, 0, -5, 0, 1}, {0, 1, -2, 1}, {2, 0, 0, 0, 1}};
  std::mt19937_64 rng(3);
  std::size_t ok = 0, total = 0;
  for (const auto& c : polys) {
    Vector coeffs;
    for (long x : c) coeffs.emplace_back(Q, x);
    AlgebraPtr a = share(polynomial_quotient(Polynomial(Q, coeffs)));
    std::vector<Element> xs;
    for (std::size_t i = 0; i < a->dim(); ++i) xs.push_back(a->basis(i));
    for (int t = 0; t < 20; ++t) xs.push_back(random_element(*a, rng, 2));
    for (std::size_t k = 0; k < xs.size(); ++k) {
      bool wt = is_well_tempered_criterion(*a, xs[k]);
      if (k < a->dim()) {
        AugmentationModules mods = augmentation_modules(a, xs[k]);
        wt = wt && is_projective(mods.b_plus_left) && is_projective(mods.b_plus_right);
      }
      ++total;
      if (wt == is_invertible(*a, xs[k])) ++ok;
    }
  }
  return {ok == total, fmt("%zu/%zu elements over %zu quotients k[x]/(f)", ok, total, polys.size())};
}

struct SplitInstance {
  AlgebraPtr a;
  Element delta;
};
std::vector<SplitInstance>& split_instances() {
  static std::vector<SplitInstance> v;
  if (v.empty()) {
    std::mt19937_64 rng(4);
    const TestProfile profiles[] = {TestProfile::SplitSemisimple, TestProfile::SemisimplePlusNilpotent,
                                    TestProfile::TriangularLike};
    for (std::uint64_t s = 0; s < 60; ++s) {
      AlgebraPtr a = share(random_test_algebra(700 + s, profiles[s % 3]));
      v.push_back({a, random_delta(*a, rng)});
    }
  }
  return v;
}

Outcome rep_dimension() {
  std::size_t ok = 0;
  for (const auto& [a, delta] : split_instances()) {
    std::size_t sum = 1;
    for (auto r : block_ranks(a, delta)) sum += r * r;
    Algebra b = augmented_homotope(*a, delta);
    if (b.dim() - jacobson_radical(b).size() == sum) ++ok;
  }
  return {ok == split_instances().size(), fmt("%zu/%zu split instances", ok, split_instances().size())};
}

Outcome radical_proposition() {
  std::size_t ok = 0, invertible = 0;
  for (const auto& [a, delta] : split_instances()) {
    RadicalComparison rc = radical_compare(*a, delta);
    invertible += rc.delta_invertible;
    if (rc.contained && rc.equal == rc.delta_invertible) ++ok;
  }
  return {ok == split_instances().size(),
          fmt("%zu/%zu instances (%zu with invertible Delta)", ok, split_instances().size(), invertible)};
}

Outcome global_dimension() {
  std::size_t ok = 0;
  for (const auto& t : oracle_trials())
    if ((t.ext1 == 0) == t.criterion) ++ok;
  return {ok == oracle_trials().size() && !oracle_trials().empty(),
          fmt("%zu/%zu instances of criterion 1", ok, oracle_trials().size())};
}

Outcome recollement() {
  std::mt19937_64 rng(7);
  const TestProfile profiles[] = {TestProfile::SplitSemisimple, TestProfile::SemisimplePlusNilpotent,
                                  TestProfile::TriangularLike};
  std::size_t instances = 0, checks = 0, failed = 0, min_samples = 1000;
  const std::vector<std::string> needed = {"unit M -> psi1^! psi1_* M", "counit psi2^* psi2_* M",
                                           "psi2^* V = 0 exactly when", "mu: psi2^* V -> psi1^! V"};
  bool all_kinds = true;
  for (std::uint64_t s = 0; instances < 24 && s < 400; ++s) {
    AlgebraPtr a = share(random_test_algebra(900 + s, profiles[s % 3]));
    if (a->dim() > 6) continue;
    Element delta = random_delta(*a, rng);
    if (!is_well_tempered_criterion(*a, delta)) continue;
    RecollementReport r = recollement_report(a, delta);
    std::set<std::string> samples;
    for (const auto& c : r.checks) {
      samples.insert(c.sample);
      ++checks;
      if (!c.passed) ++failed;
    }
    for (const auto& k : needed) {
      bool seen = false;
      for (const auto& c : r.checks) seen = seen || c.name.rfind(k, 0) == 0;
      all_kinds = all_kinds && seen;
    }
    min_samples = std::min(min_samples, samples.size());
    ++instances;
  }
  return {instances >= 20 && min_samples >= 3 && failed == 0 && all_kinds,
          fmt("%zu well-tempered instances, >= %zu samples each, %zu/%zu checks pass", instances, min_samples,
              checks - failed, checks)};
}

Outcome degree() {
  std::size_t ok = 0, total = 0;
  for (std::size_t d : {2u, 3u}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      Algebra m = constructed_generic_tensor(d, F101, 40 + s);
      Element v = m.basis(0);
      Algebra mp = homotope_map_right(m, v);
      auto pre = homotope_preimages(mp, v);
      bool good = pre.size() == (std::size_t{1} << d);
      for (std::size_t i = 0; i < pre.size(); ++i) {
        good = good && same_algebra(homotope_map_right(pre[i], v), mp);
        for (std::size_t j = 0; j < i; ++j) good = good && !same_algebra(pre[i], pre[j]);
      }
      ++total;
      if (good) ++ok;
    }
  }
  return {ok == total, fmt("%zu/%zu instances with 4 (d=2) or 8 (d=3) distinct verified preimages", ok, total)};
}

Outcome genericity() {
  DensityReport r = genericity_density(3, F101, 200, 2024);
  bool pass = r.frac_l_invertible >= 0.95 && r.frac_r_invertible >= 0.95 && r.frac_simple_left >= 0.95 &&
              r.frac_simple_right >= 0.95;
  return {pass, fmt("l_v %.3f, r_v %.3f, left-simple %.3f, right-simple %.3f (seed 2024)", r.frac_l_invertible,
                    r.frac_r_invertible, r.frac_simple_left, r.frac_simple_right)};
}

Outcome kaplansky() {
  std::mt19937_64 rng(10);
  std::size_t ok = 0, done = 0;
  for (std::uint64_t s = 0; done < 50 && s < 500; ++s) {
    Algebra m = random_tensor(2 + s % 2, F101, 300 + s);
    Element a = random_element(m, rng, 0), b = random_element(m, rng, 0);
    if (rank(m.mult_operator(a, Side::Left)) < m.dim() || rank(m.mult_operator(b, Side::Right)) < m.dim()) continue;
    auto unit = find_unit(kaplansky_unitalize(m, a, b));
    ++done;
    if (unit && *unit == m.multiply(a, b)) ++ok;
  }
  return {done == 50 && ok == done, fmt("%zu/%zu sampled tensors", ok, done)};
}

// dim Au - dim(ku + Iu), computed in A directly.
std::size_t kernel_oracle(const FiberSetup& s, const Element& u) {
  const Algebra& a = *s.a;
  std::vector<Vector> au, small{u.coords()};
  for (std::size_t i = 0; i < a.dim(); ++i) au.push_back(a.multiply(a.basis(i), u).coords());
  for (const auto& i : s.ideal) small.push_back(a.multiply(i, u).coords());
  return span_dim(a.field(), a.dim(), au) - span_dim(a.field(), a.dim(), small);
}

Outcome fiber_functors() {
  std::mt19937_64 rng(11);
  std::size_t instances = 0, round_ok = 0, rounds = 0, surj_ok = 0, surj = 0;
  std::size_t literal_ok = 0, literal = 0, hyp = 0, hyp_ok = 0, oracle_ok = 0;
  for (std::uint64_t seed = 0; instances < 40 && seed < 400; ++seed) {
    AlgebraPtr a = share(random_commutative_algebra(seed));
    Element delta = a->multiply(random_element(*a, rng, 2), a->basis(rng() % a->dim()));
    FiberSetup s = fiber_setup(a, delta);
    if (s.ideal.empty() || s.c->dim() == 0) continue;
    ++instances;
    for (std::size_t r = 1; r <= 2; ++r) {
      ++rounds;
      if (glue_round_trip(s, free_triple(s, r, rng)).ok()) ++round_ok;
    }
    Element ua = a->zero();
    while (ua.is_zero())
      for (const auto& i : s.ideal) ua += Scalar(Q, static_cast<long>(rng() % 5) - 2) * i;
    ModuleRep v = cyclic_quotient(s, *fiber_element(s, ua, Scalar::zero(Q)));
    for (const ModuleRep& l : {regular_module(s.b, Side::Left), v}) {
      Matrix eta = glue_unit(s, l);
      ++surj;
      if (eta.rows() == 0 || rank(eta) == eta.rows()) ++surj_ok;
    }
    std::size_t k = unit_kernel(s, v).size();
    ++literal;
    if (k == s.c->dim() - 1) ++literal_ok;
    if (k == kernel_oracle(s, ua)) ++oracle_ok;
    if (colon_equals_ideal(s, ua)) {
      ++hyp;
      if (k == s.c->dim() - 1) ++hyp_ok;
    }
  }
  bool pass = instances >= 30 && round_ok == rounds && surj_ok == surj && literal_ok == literal;
  return {pass, fmt("%zu instances; glue after unglue %zu/%zu; unit surjective %zu/%zu; "
                    "dim ker = dim(A/I) - 1 on %zu/%zu (on %zu/%zu with (Iu:u) = I; kernel oracle %zu/%zu)",
                    instances, round_ok, rounds, surj_ok, surj, literal_ok, literal, hyp_ok, hyp, oracle_ok, literal)};
}

Outcome functoriality() {
  std::mt19937_64 rng(12);
  const TestProfile profiles[] = {TestProfile::SplitSemisimple, TestProfile::SemisimplePlusNilpotent,
                                  TestProfile::TriangularLike};
  std::size_t ok = 0, proper = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    AlgebraPtr a = s % 4 == 3 ? share(random_commutative_algebra(s)) : share(random_test_algebra(1100 + s, profiles[s % 3]));
    std::vector<Element> ideal = ideal_closure(*a, {random_delta(*a, rng)});
    if (ideal.size() == a->dim() && s % 2 == 0) ideal = jacobson_radical(*a);
    proper += ideal.size() > 0 && ideal.size() < a->dim();
    if (homotope_functoriality(a, ideal, random_element(*a, rng)).all()) ++ok;
  }
  return {ok == 50, fmt("%zu/50 triples (%zu with 0 < I < A)", ok, proper)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"main theorem oracle", main_theorem},
      {"matrix corollary", matrix_corollary},
      {"commutative corollary", commutative_corollary},
      {"rep-dimension corollary", rep_dimension},
      {"radical proposition", radical_proposition},
      {"Ext^1 detector", global_dimension},
      {"recollement identities", recollement},
      {"degree 2^d", degree},
      {"genericity sampling", genericity},
      {"Kaplansky trick", kaplansky},
      {"fiber-product functors", fiber_functors},
      {"homotope functoriality", functoriality},
  };
  int red = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const Error& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    red += !o.pass;
    std::printf("%s  %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return red == 0 ? 0 : 1;
}
