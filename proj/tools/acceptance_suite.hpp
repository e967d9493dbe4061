#pragma once

// End-to-end verification suite: one check per shipped guarantee, each printed
// as a [PASS]/[FAIL] line.  Shared by the standalone `acceptance` binary and
// the CLI `selftest` subcommand.  Output carries no timings or timestamps so
// repeated runs are byte-identical; runtime limits are enforced internally and
// reported only on violation.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "untwist/classes.hpp"
#include "untwist/combin.hpp"
#include "untwist/graded.hpp"
#include "untwist/schur/resolution.hpp"
#include "untwist/steinberg.hpp"
#include "untwist/twist_engine.hpp"

namespace untwist::selftest {

struct Options {
    bool quick = false;          // trim the random sample sizes and the largest
                                 // intertwiner instances
    std::uint64_t seed = 12345;  // seed for the randomized property checks
};

namespace detail {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void expect(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure(what);
}

inline std::string dims_str(const GradedDims& g) {
    std::string s = "{";
    for (const auto& [deg, mult] : g.dims())
        s += (s.size() > 1 ? "," : "") + std::to_string(deg) + ":" + mult.str();
    return s + "}";
}

// A full random table: every partition of d gets an entry (possibly empty),
// degrees <= 10, multiplicities in 1..3.
inline ExtTable random_table(std::mt19937_64& rng, std::uint32_t d) {
    ExtTable t;
    t.d = d;
    for (const auto& lam : partitions(d, d)) {
        GradedDims::Map m;
        std::size_t nent = rng() % 4;
        for (std::size_t i = 0; i < nent; ++i)
            m[rng() % 11] = Int(1 + rng() % 3);
        t.entries[lam] = GradedDims(std::move(m));
    }
    return t;
}

}  // namespace detail

class Runner {
  public:
    Runner(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

    int failures() const { return failures_; }
    std::size_t count() const { return index_; }

    void check(const std::string& name, double limit_seconds,
               const std::function<void()>& body) {
        ++index_;
        std::string msg;
        auto start = std::chrono::steady_clock::now();
        try {
            body();
            std::chrono::duration<double> secs =
                std::chrono::steady_clock::now() - start;
            if (limit_seconds > 0 && secs.count() > limit_seconds)
                msg = "runtime limit of " + std::to_string(limit_seconds) +
                      "s exceeded (" + std::to_string(secs.count()) + "s)";
        } catch (const std::exception& e) {
            msg = e.what();
        }
        out_ << (msg.empty() ? "[PASS] " : "[FAIL] ") << (index_ < 10 ? "0" : "")
             << index_ << " " << name;
        if (!msg.empty()) {
            out_ << ": " << msg;
            ++failures_;
        }
        out_ << "\n";
    }

    const Options& options() const { return opt_; }

  private:
    Options opt_;
    std::ostream& out_;
    std::size_t index_ = 0;
    int failures_ = 0;
};

inline int run(const Options& opt, std::ostream& out) {
    using detail::dims_str;
    using detail::expect;
    Runner run(opt, out);

    run.check(
        "even-degree parameter spaces have unit multiplicities (p in {2,3,5}, r <= 3)",
        1.0, [] {
            for (std::uint32_t p : {2u, 3u, 5u})
                for (std::uint32_t r = 0; r <= 3; ++r) {
                    GradedDims e = make_er(p, r);
                    auto q = static_cast<std::uint64_t>(ipow(p, r));
                    expect(e.total_dim() == Int(q), "total dimension != p^r");
                    expect(e.dims().size() == q, "support size != p^r");
                    for (std::uint64_t i = 0; i < q; ++i)
                        expect(e.at(2 * i) == 1, "missing degree " + std::to_string(2 * i));
                }
        });

    run.check("parameter factorization: stretch at level r-1 tensor level 1", 0, [] {
        for (std::uint32_t p : {2u, 3u, 5u})
            for (std::uint32_t r = 1; r <= 3; ++r)
                expect(make_er(p, r) ==
                           tensor(frobenius_stretch(make_er(p, r - 1), p), make_er(p, 1)),
                       "factorization failed at p=" + std::to_string(p) +
                           " r=" + std::to_string(r));
    });

    run.check("self-extensions of the Frobenius twist match the even-degree pattern",
              60.0, [] {
                  auto alg = build_schur_algebra(2, 2, 2);
                  ResolutionContext ctx(regular_from_schur(*alg));
                  CoordModule M = coord_module(evaluate_functor("Fr(1)", 2, 2));
                  GradedDims e = ctx.ext_dims(M, M, 6);
                  expect(e == GradedDims({{0, 1}, {2, 1}}),
                         "p=2 self-extensions: got " + dims_str(e));
                  const char* gate = std::getenv("UNTWIST_ACCEPT_STRETCH");
                  if (gate == nullptr || std::string(gate) != "0") {
                      auto alg3 = build_schur_algebra(3, 3, 3);
                      ResolutionContext ctx3(regular_from_schur(*alg3));
                      CoordModule M3 = coord_module(evaluate_functor("Fr(1)", 3, 3));
                      GradedDims e3 = ctx3.ext_dims(M3, M3, 6);
                      expect(e3 == GradedDims({{0, 1}, {2, 1}, {4, 1}}),
                             "p=3 self-extensions: got " + dims_str(e3));
                  }
              });

    run.check(
        "engine untwisting of the identity table matches the parameter space and the oracle",
        0, [] {
            ExtTable id_table;
            id_table.d = 1;
            id_table.entries[{1}] = GradedDims({{0, 1}});
            for (std::uint32_t p : {2u, 3u})
                for (std::uint32_t r = 0; r <= 3; ++r)
                    expect(untwist(id_table, p, r) == make_er(p, r),
                           "untwist != parameter space at p=" + std::to_string(p) +
                               " r=" + std::to_string(r));
            auto alg = build_schur_algebra(2, 2, 2);
            ResolutionContext ctx(regular_from_schur(*alg));
            CoordModule M = coord_module(evaluate_functor("Fr(1)", 2, 2));
            expect(untwist(id_table, 2, 1) == ctx.ext_dims(M, M, 6),
                   "untwist disagrees with the brute-force value at (p,r)=(2,1)");
        });

    run.check(
        "periodicity remainders stay nonnegative and reconstruct exactly (random tables)",
        0, [&] {
            std::mt19937_64 rng(run.options().seed);
            int rounds = run.options().quick ? 40 : 200;
            for (int round = 0; round < rounds; ++round) {
                auto d = static_cast<std::uint32_t>(1 + rng() % 4);
                std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[rng() % 3];
                auto r = static_cast<std::uint32_t>(rng() % 3);
                ExtTable t = detail::random_table(rng, d);
                GradedDims result = untwist(t, p, r);
                GradedDims e_d = t.lookup({d});
                // must not signal a negative coefficient
                GradedDims rem = periodic_remainder(result, e_d, d, p, r);
                GradedDims back = rem;
                for (std::uint64_t i = 0; Int(i) < ipow(p, r); ++i)
                    back = sum(back, shift(e_d, 2ull * d * i));
                expect(back == result, "reconstruction mismatch in round " +
                                           std::to_string(round));
            }
        });

    run.check("total-dimension polynomial fits and predicts (random tables)", 0, [&] {
        std::mt19937_64 rng(run.options().seed + 1);
        int rounds = run.options().quick ? 20 : 100;
        for (int round = 0; round < rounds; ++round) {
            auto d = static_cast<std::uint32_t>(1 + rng() % 4);
            std::uint32_t p = (rng() % 2) ? 3 : 2;
            ExtTable t = detail::random_table(rng, d);
            Poly f = fit_polynomial(t, p);
            expect(f.size() <= d + 1, "fitted degree exceeds d");
            for (std::uint32_t r = 0; r <= 6; ++r) {
                if (ipow(p, r) < Int(d)) continue;
                expect(predict_total_dim(f, p, r) == untwist_total_dim(t, p, r),
                       "prediction mismatch at r=" + std::to_string(r) +
                           " in round " + std::to_string(round));
            }
        }
    });

    run.check("intertwiner dimensions match the matrix-counting oracle", 0, [&] {
        auto ten = [](const char* head, const std::vector<std::uint32_t>& parts) {
            std::string s = "Ten(";
            for (std::size_t i = 0; i < parts.size(); ++i)
                s += (i ? "," : "") + std::string(head) + "(" +
                     std::to_string(parts[i]) + ")";
            return s + ")";
        };
        struct Case {
            std::vector<std::uint32_t> lam, mu;
            std::uint32_t n;
            std::uint32_t expected;  // frozen matrix counts
        };
        std::vector<Case> cases = {
            {{2}, {2}, 2, 1},
            {{3}, {3}, 3, 1},          {{3}, {2, 1}, 3, 1},
            {{3}, {1, 1, 1}, 3, 1},    {{2, 1}, {3}, 3, 1},
            {{2, 1}, {2, 1}, 3, 2},    {{2, 1}, {1, 1, 1}, 3, 3},
            {{1, 1, 1}, {3}, 3, 1},    {{1, 1, 1}, {2, 1}, 3, 3},
            {{1, 1, 1}, {1, 1, 1}, 3, 6},
            {{4}, {4}, 4, 1},          {{2, 2}, {4}, 4, 1},
        };
        if (!run.options().quick) {
            cases.push_back({{2, 2}, {2, 2}, 4, 3});
            cases.push_back({{2, 1, 1}, {2, 2}, 4, 4});
            cases.push_back({{1, 1, 1, 1}, {2, 2}, 4, 6});
            cases.push_back({{2, 2}, {1, 1, 1, 1}, 4, 6});
        }
        for (const auto& c : cases) {
            ModuleRep M = evaluate_functor(ten("Div", c.lam), c.n, 2);
            ModuleRep N = evaluate_functor(ten("Sym", c.mu), c.n, 2);
            expect(hom_dim(M, N) == c.expected,
                   "wrong dimension for " + ten("Div", c.lam) + " -> " +
                       ten("Sym", c.mu));
        }
    });

    run.check("cocycle symbol laws hold exhaustively (d <= 3, l <= 2, p in {2,3})",
              1.0, [] {
                  for (std::uint32_t p : {2u, 3u})
                      for (std::uint32_t l = 1; l <= 2; ++l) {
                          std::vector<std::uint64_t> degs;
                          for (std::uint32_t i = 0; i < l; ++i) degs.push_back(2 * i);
                          std::vector<CocycleSymbol> all;
                          for (std::uint32_t d = 0; d <= 3; ++d)
                              for (const auto& nu : comp_matrices(d, l, p))
                                  all.push_back(class_c(nu, p));
                          for (const auto& c : all) {
                              expect(c.degree() == weight_t(c.nu), "class degree != t(nu)");
                              expect(c.domain() == rowsum_p(c.nu, p),
                                     "class domain != p-scaled row sums");
                              for (std::uint64_t e = 0; e <= 3; ++e) {
                                  PhiSlot s = phi_slot(c.nu, p, e, degs);
                                  expect(s.target_ext == e + weight_t(c.nu),
                                         "comparison-map slot degree wrong");
                                  expect(s.target_index == rowsum_p(c.nu, p),
                                         "comparison-map slot index wrong");
                              }
                          }
                          for (const auto& a : all)
                              for (const auto& b : all) {
                                  if (a.nu.total() + b.nu.total() > 3) continue;
                                  CocycleSymbol ab = cup_compose(a, b);
                                  expect(ab.degree() == a.degree() + b.degree(),
                                         "cup product degree not additive");
                                  expect(ab == cup_compose(b, a),
                                         "cup product not commutative");
                                  CompMatrix s = a.nu;
                                  for (std::size_t i = 0; i < s.n_rows(); ++i)
                                      for (std::size_t j = 0; j < s.n_cols(); ++j)
                                          s.rows[i][j] += b.nu.rows[i][j];
                                  expect(ab == class_c(s, p),
                                         "cup product is not the index-sum class");
                              }
                      }
                  // divided-power multiplication carries binomial coefficients
                  for (std::uint32_t a = 0; a <= 3; ++a)
                      for (std::uint32_t b = 0; b <= 3; ++b)
                          for (std::uint32_t j = 0; j <= 2; ++j) {
                              auto [coef, sym] = gamma_product(gamma(a, j), gamma(b, j));
                              expect(coef == binomial(Int(a) + b, a) &&
                                         sym == gamma(a + b, j),
                                     "divided power product law failed");
                          }
              });

    run.check("twisted word orbit and shift representatives match the frozen forms",
              0, [] {
                  SteinbergWord w = SteinbergWord::parse("V0,1,V2");
                  std::vector<std::string> orbit_expect = {
                      "V0,1,V2", "1,V0,1,V2", "1,1,V0,1,V2", "V2,1,1,V0",
                      "1,V2,1,1,V0"};
                  auto orbit = orbit_mod_u(w, 5);
                  expect(orbit.size() == orbit_expect.size(), "orbit length != 5");
                  for (std::size_t i = 0; i < orbit.size(); ++i)
                      expect(orbit[i].str() == orbit_expect[i],
                             "orbit element " + std::to_string(i) + " is " +
                                 orbit[i].str());
                  std::vector<std::pair<std::string, std::size_t>> shift_expect = {
                      {"V0,1,V2", 0}, {"V0,1,V2", 1}, {"V0,1,V2", 2},
                      {"V2,1,1,V0", 0}, {"V2,1,1,V0", 1}};
                  auto shifts = q_shifts(w, 5);
                  expect(shifts.size() == shift_expect.size(), "q-shift count != 5");
                  for (std::size_t i = 0; i < shifts.size(); ++i)
                      expect(shifts[i].base.str() == shift_expect[i].first &&
                                 shifts[i].twist_level == shift_expect[i].second,
                             "q-shift " + std::to_string(i) + " is " +
                                 shifts[i].base.str() + "^(" +
                                 std::to_string(shifts[i].twist_level) + ")");
              });

    run.check("pairing counts match the double factorial; matching-indexed series at d=1",
              0, [] {
                  for (std::uint32_t d = 1; d <= 6; ++d) {
                      Int closed = factorial(2 * d) / (ipow(2, d) * factorial(d));
                      expect(count_pairings(2 * d) == closed,
                             "pairing count formula failed at d=" + std::to_string(d));
                      expect(Int(pairings(2 * d).size()) == closed,
                             "pairing enumeration disagrees at d=" + std::to_string(d));
                  }
                  for (std::uint32_t p : {2u, 3u})
                      expect(omega_poincare(1, GradedDims({{0, 1}}), p) == make_er(p, 1),
                             "matching-indexed series != level-1 parameter space");
              });

    run.check("bigraded series coefficients match the hand-expanded product", 0, [] {
        BigradedTable t = sym_hilbert(4, {0, 2}, 4, 3);
        std::map<std::pair<int, int>, Int> frozen = {
            {{0, 0}, 1},  {{0, 1}, 4},  {{0, 2}, 10}, {{0, 3}, 20},
            {{2, 1}, 4},  {{2, 2}, 16}, {{2, 3}, 40},
            {{4, 2}, 10}, {{4, 3}, 40}};
        expect(t.trunc_coh == 4 && t.trunc_poly == 3, "truncation bounds not recorded");
        expect(t.entries == frozen, "coefficient table disagrees with the hand expansion");
    });

    out << run.count() << " checks, " << run.failures() << " failure"
        << (run.failures() == 1 ? "" : "s") << "\n";
    return run.failures();
}

}  // namespace untwist::selftest
