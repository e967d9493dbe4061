// Single command-line entry point.  All results go to standard output as
// canonical JSON (sorted numeric keys, no zero entries, exact big-integer
// multiplicities), so identical inputs give byte-identical outputs.  Errors go
// to standard error; usage problems exit with code 2 and every library error
// category keeps its own exit code.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "untwist/classes.hpp"
#include "untwist/combin.hpp"
#include "untwist/graded.hpp"
#include "untwist/json_io.hpp"
#include "untwist/schur/resolution.hpp"
#include "untwist/steinberg.hpp"
#include "untwist/twist_engine.hpp"

#include "acceptance_suite.hpp"

namespace {

using namespace untwist;

json load_json(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::domain, "cannot open " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        fail(ErrorCode::domain, path + ": " + e.what());
    }
}

GradedDims load_graded(const std::string& path) {
    return parse_graded_dims(load_json(path));
}

ExtTable load_table(const std::string& path) {
    return parse_ext_table(load_json(path));
}

std::string comp_matrix_json(const CompMatrix& nu) {
    std::string s = "[";
    for (std::size_t i = 0; i < nu.n_rows(); ++i) {
        if (i) s += ",";
        s += "[";
        for (std::size_t j = 0; j < nu.n_cols(); ++j)
            s += (j ? "," : "") + std::to_string(nu.rows[i][j]);
        s += "]";
    }
    return s + "]";
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        require(!item.empty() && item.find_first_not_of("0123456789") == std::string::npos,
                ErrorCode::domain, "expected a comma-separated list of integers");
        out.push_back(std::stoull(item));
    }
    return out;
}

void emit(const std::string& body) { std::cout << body << "\n"; }

// Brute-force graded Ext dimensions between two functor expressions of equal
// degree, over the minimal (or requested) commutant algebra.
GradedDims oracle_ext(const FunctorExpr& left, const FunctorExpr& right,
                      std::uint32_t p, std::uint32_t n, std::uint32_t maxdeg,
                      const Budget& budget) {
    require(left.degree(p) == right.degree(p), ErrorCode::mismatch,
            "left and right expressions have different degrees");
    auto D = static_cast<std::uint32_t>(left.degree(p));
    if (n == 0) n = D;
    auto alg = build_schur_algebra(n, D, p, budget);
    ResolutionContext ctx(regular_from_schur(*alg, budget), budget);
    CoordModule M = coord_module(evaluate_functor(left, n, p, budget));
    CoordModule N = coord_module(evaluate_functor(right, n, p, budget));
    return ctx.ext_dims(M, N, maxdeg);
}

// Table of graded Ext dimensions indexed by the partitions of d: the entry for
// lambda pairs the product of the family's pieces of arities lambda_1, ... with
// the right-hand expression.  Only the exponential families Div/Sym/Ext admit
// this piecewise decomposition.
ExtTable oracle_table(const std::string& family, const FunctorExpr& right,
                      std::uint32_t d, std::uint32_t p, std::uint32_t n,
                      std::uint32_t maxdeg, const Budget& budget) {
    require(family == "Div" || family == "Sym" || family == "Ext",
            ErrorCode::domain, "table family must be Div, Sym or Ext");
    require(right.degree(p) == d, ErrorCode::mismatch,
            "right-hand expression degree must equal d");
    if (n == 0) n = d;
    auto alg = build_schur_algebra(n, d, p, budget);
    ResolutionContext ctx(regular_from_schur(*alg, budget), budget);
    CoordModule N = coord_module(evaluate_functor(right, n, p, budget));
    ExtTable t;
    t.d = d;
    for (const auto& lam : partitions(d, d)) {
        FunctorExpr ten;
        ten.kind = FunctorExpr::Kind::Ten;
        for (auto part : lam) {
            FunctorExpr f;
            f.kind = family == "Div" ? FunctorExpr::Kind::Div
                     : family == "Sym" ? FunctorExpr::Kind::Sym
                                       : FunctorExpr::Kind::Ext;
            f.a = part;
            ten.args.push_back(f);
        }
        CoordModule M = coord_module(evaluate_functor(ten, n, p, budget));
        t.entries[lam] = ctx.ext_dims(M, N, maxdeg);
    }
    t.validate();
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded untwisting toolkit: twist-parameter decompositions, "
                 "dimension polynomials, cocycle bookkeeping and a brute-force "
                 "commutant-algebra oracle"};
    app.require_subcommand(1);

    // er
    std::uint32_t er_p = 0, er_r = 0;
    auto* er = app.add_subcommand("er", "graded parameter space at twist level r");
    er->add_option("--p", er_p, "characteristic")->required();
    er->add_option("--r", er_r, "twist level")->required();
    er->callback([&] { emit(write_graded_dims(make_er(er_p, er_r))); });

    // tensor
    std::string ta, tb;
    auto* ten = app.add_subcommand("tensor", "graded tensor product of two dimension vectors");
    ten->add_option("--a", ta, "first graded dimensions (JSON file)")->required();
    ten->add_option("--b", tb, "second graded dimensions (JSON file)")->required();
    ten->callback([&] { emit(write_graded_dims(tensor(load_graded(ta), load_graded(tb)))); });

    // stretch
    std::string st_param;
    std::uint32_t st_p = 0;
    auto* st = app.add_subcommand("stretch", "scale every degree by p");
    st->add_option("--param", st_param, "graded dimensions (JSON file)")->required();
    st->add_option("--p", st_p, "scaling factor")->required();
    st->callback([&] { emit(write_graded_dims(frobenius_stretch(load_graded(st_param), st_p))); });

    // sym-hilbert
    std::uint64_t sh_gdim = 0;
    std::string sh_shifts;
    int sh_coh = 0, sh_poly = 0;
    auto* sh = app.add_subcommand(
        "sym-hilbert", "bigraded Hilbert series of a free graded-commutative algebra");
    sh->add_option("--gdim", sh_gdim, "generator dimension")->required();
    sh->add_option("--shifts", sh_shifts, "comma-separated even shift degrees")->required();
    sh->add_option("--trunc-coh", sh_coh, "cohomological truncation")->required();
    sh->add_option("--trunc-poly", sh_poly, "polynomial truncation")->required();
    sh->callback([&] {
        emit(write_bigraded_table(
            sym_hilbert(sh_gdim, parse_uint_list(sh_shifts), sh_coh, sh_poly)));
    });

    // decompose
    std::uint32_t de_d = 0, de_p = 0;
    std::string de_param;
    bool de_bif = false, de_source = false, de_target = false;
    auto* de = app.add_subcommand("decompose",
                                  "summands of the twist-parameter decomposition");
    de->add_option("--d", de_d, "homogeneous degree")->required();
    de->add_option("--param", de_param, "parameter graded dimensions (JSON file)")->required();
    de->add_flag("--bifunctor", de_bif, "matrix-indexed bifunctor form");
    de->add_option("--p", de_p, "characteristic (bifunctor form)");
    de->add_flag("--source", de_source, "source-side decomposition");
    de->add_flag("--target", de_target, "target-side decomposition");
    de->callback([&] {
        GradedDims E = load_graded(de_param);
        std::string out = "[";
        bool first = true;
        if (de_bif) {
            require(de_p >= 2, ErrorCode::domain, "--bifunctor requires --p");
            require(de_source != de_target, ErrorCode::domain,
                    "--bifunctor requires exactly one of --source / --target");
            auto summands = de_source ? bifunctor_source(de_d, E, de_p)
                                      : bifunctor_target(de_d, E, de_p);
            for (const auto& s : summands) {
                if (!first) out += ",";
                first = false;
                out += "{\"nu\":" + comp_matrix_json(s.nu) +
                       ",\"shift\":" + std::to_string(s.shift) + "}";
            }
        } else {
            require(!de_source && !de_target, ErrorCode::domain,
                    "--source/--target only apply with --bifunctor");
            for (const auto& s : param_decomposition(de_d, E)) {
                if (!first) out += ",";
                first = false;
                out += "{\"partition\":\"" + partition_key(s.lam) +
                       "\",\"shift\":" + std::to_string(s.shift) + "}";
            }
        }
        emit(out + "]");
    });

    // untwist
    std::string ut_table, ut_param;
    std::uint32_t ut_p = 0, ut_r = 0;
    bool ut_have_r = false, ut_sparse = false, ut_direct = false, ut_total = false;
    auto* ut = app.add_subcommand("untwist",
                                  "evaluate the decomposition against a table");
    ut->add_option("--table", ut_table, "partition-indexed table (JSON file)")->required();
    ut->add_option("--p", ut_p, "characteristic");
    auto* ut_ropt = ut->add_option("--r", ut_r, "twist level");
    ut->add_option("--param", ut_param, "explicit parameter (JSON file) instead of --p/--r");
    ut->add_flag("--sparse", ut_sparse, "treat missing table entries as zero");
    ut->add_flag("--direct", ut_direct, "enumerate compositions instead of grouping");
    ut->add_flag("--total", ut_total, "print only the total dimension");
    ut->callback([&] {
        ut_have_r = ut_ropt->count() > 0;
        ExtTable t = load_table(ut_table);
        if (!ut_param.empty()) {
            require(!ut_have_r, ErrorCode::domain, "--param excludes --p/--r");
            GradedDims res = untwist_general(t, load_graded(ut_param), ut_sparse);
            emit(ut_total ? "{\"total_dim\":" + res.total_dim().str() + "}"
                          : write_graded_dims(res));
            return;
        }
        require(ut_p >= 2 && ut_have_r, ErrorCode::domain,
                "untwist needs --p and --r (or --param)");
        if (ut_total) {
            emit("{\"total_dim\":" +
                 untwist_total_dim(t, ut_p, ut_r, ut_sparse).str() + "}");
            return;
        }
        emit(write_graded_dims(untwist::untwist(t, ut_p, ut_r, ut_sparse, ut_direct)));
    });

    // fit
    std::string fit_table;
    std::uint32_t fit_p = 0, fit_rmax = 6;
    bool fit_sparse = false;
    auto* fit = app.add_subcommand(
        "fit", "interpolate the total dimension as a polynomial in p^r");
    fit->add_option("--table", fit_table, "partition-indexed table (JSON file)")->required();
    fit->add_option("--p", fit_p, "characteristic")->required();
    fit->add_option("--rmax", fit_rmax, "largest twist level to predict (default 6)");
    fit->add_flag("--sparse", fit_sparse, "treat missing table entries as zero");
    fit->callback([&] {
        ExtTable t = load_table(fit_table);
        Poly f = fit_polynomial(t, fit_p, fit_sparse);
        std::string out = "{\"poly\":" + write_poly(f) + ",\"predictions\":{";
        bool first = true;
        for (std::uint32_t r = 0; r <= fit_rmax; ++r) {
            if (ipow(fit_p, r) < Int(t.d)) continue;  // below the guaranteed range
            if (!first) out += ",";
            first = false;
            out += "\"" + std::to_string(r) +
                   "\":" + predict_total_dim(f, fit_p, r).str();
        }
        emit(out + "}}");
    });

    // classes check
    std::uint32_t cl_d = 0, cl_l = 0, cl_p = 0;
    auto* cl = app.add_subcommand("classes", "cocycle symbol bookkeeping");
    cl->require_subcommand(1);
    auto* clc = cl->add_subcommand("check", "run the law suite over all index matrices");
    clc->add_option("--d", cl_d, "total degree bound")->required();
    clc->add_option("--l", cl_l, "number of rows")->required();
    clc->add_option("--p", cl_p, "characteristic (number of columns)")->required();
    clc->callback([&] {
        require(cl_l >= 1, ErrorCode::domain, "need at least one row");
        std::vector<std::uint64_t> degs;
        for (std::uint32_t i = 0; i < cl_l; ++i) degs.push_back(2 * i);
        std::vector<CocycleSymbol> all;
        for (std::uint32_t dd = 0; dd <= cl_d; ++dd)
            for (const auto& nu : comp_matrices(dd, cl_l, cl_p))
                all.push_back(class_c(nu, cl_p));
        std::uint64_t pairs = 0;
        for (const auto& c : all) {
            require(c.degree() == weight_t(c.nu), ErrorCode::internal,
                    "class degree law failed");
            require(c.domain() == rowsum_p(c.nu, cl_p), ErrorCode::internal,
                    "class domain law failed");
            PhiSlot s = phi_slot(c.nu, cl_p, 0, degs);
            require(s.target_ext == c.degree(), ErrorCode::internal,
                    "comparison-map degree law failed");
        }
        for (const auto& a : all)
            for (const auto& b : all) {
                if (a.nu.total() + b.nu.total() > cl_d) continue;
                CocycleSymbol ab = cup_compose(a, b);
                require(ab.degree() == a.degree() + b.degree() &&
                            ab == cup_compose(b, a),
                        ErrorCode::internal, "cup product law failed");
                ++pairs;
            }
        emit("{\"p\":" + std::to_string(cl_p) + ",\"l\":" + std::to_string(cl_l) +
             ",\"d\":" + std::to_string(cl_d) +
             ",\"classes\":" + std::to_string(all.size()) +
             ",\"cup_pairs\":" + std::to_string(pairs) + ",\"ok\":true}");
    });

    // steinberg
    std::size_t sb_u = 0, sb_head = 0, sb_tail = 0;
    std::string sb_word;
    auto* sb = app.add_subcommand("steinberg", "twisted tensor word combinatorics");
    sb->require_subcommand(1);
    auto add_word_opts = [&](CLI::App* sub, bool margins) {
        sub->add_option("--u", sb_u, "twist window length")->required();
        sub->add_option("--word", sb_word, "comma-joined factor labels")->required();
        if (margins) {
            sub->add_option("--head", sb_head, "required leading trivial levels");
            sub->add_option("--tail", sb_tail, "required trailing trivial levels");
        }
    };
    auto* sbo = sb->add_subcommand("orbit", "orbit under the cyclic twist action");
    add_word_opts(sbo, false);
    sbo->callback([&] {
        std::string out = "{\"orbit\":[";
        bool first = true;
        for (const auto& w : orbit_mod_u(SteinbergWord::parse(sb_word), sb_u)) {
            out += std::string(first ? "" : ",") + "\"" + w.str() + "\"";
            first = false;
        }
        emit(out + "]}");
    });
    auto* sbq = sb->add_subcommand("qshifts", "orbit written as base words with split-off twists");
    add_word_opts(sbq, false);
    sbq->callback([&] {
        std::string out = "{\"qshifts\":[";
        bool first = true;
        for (const auto& s : q_shifts(SteinbergWord::parse(sb_word), sb_u)) {
            out += std::string(first ? "" : ",") + "{\"base\":\"" + s.base.str() +
                   "\",\"twist\":" + std::to_string(s.twist_level) + "}";
            first = false;
        }
        emit(out + "]}");
    });
    auto* sbg = sb->add_subcommand("goodshift",
                                   "first orbit element with the requested trivial margins");
    add_word_opts(sbg, true);
    sbg->callback([&] {
        auto w = find_good_shift(SteinbergWord::parse(sb_word), sb_u, sb_head, sb_tail);
        emit(w ? "{\"goodshift\":\"" + w->str() + "\"}" : "{\"goodshift\":null}");
    });

    // oracle
    std::uint32_t or_p = 0, or_n = 0, or_maxdeg = 6, or_d = 0;
    std::string or_left, or_right, or_expr, or_family = "Div";
    auto* orc = app.add_subcommand("oracle", "brute-force commutant-algebra computations");
    orc->require_subcommand(1);
    auto* oext = orc->add_subcommand("ext", "graded Ext dimensions between two expressions");
    oext->add_option("--p", or_p, "characteristic")->required();
    oext->add_option("--n", or_n, "vector space dimension (default: the degree)");
    oext->add_option("--left", or_left, "left functor expression")->required();
    oext->add_option("--right", or_right, "right functor expression")->required();
    oext->add_option("--maxdeg", or_maxdeg, "largest Ext degree (default 6)");
    oext->callback([&] {
        emit(write_graded_dims(oracle_ext(parse_functor(or_left), parse_functor(or_right),
                                          or_p, or_n, or_maxdeg, Budget::from_env())));
    });
    auto* otab = orc->add_subcommand(
        "table", "partition-indexed Ext table for an exponential family");
    otab->add_option("--d", or_d, "homogeneous degree")->required();
    otab->add_option("--p", or_p, "characteristic")->required();
    otab->add_option("--n", or_n, "vector space dimension (default: d)");
    otab->add_option("--family", or_family, "piecewise family: Div, Sym or Ext (default Div)");
    otab->add_option("--right", or_right, "right functor expression")->required();
    otab->add_option("--maxdeg", or_maxdeg, "largest Ext degree (default 6)");
    otab->callback([&] {
        emit(write_ext_table(oracle_table(or_family, parse_functor(or_right), or_d,
                                          or_p, or_n, or_maxdeg, Budget::from_env())));
    });
    auto* oev = orc->add_subcommand("eval", "dimension of an evaluated functor expression");
    oev->add_option("--p", or_p, "characteristic")->required();
    oev->add_option("--n", or_n, "vector space dimension (default: the degree)");
    oev->add_option("--expr", or_expr, "functor expression")->required();
    oev->callback([&] {
        Budget b = Budget::from_env();
        FunctorExpr e = parse_functor(or_expr);
        std::uint32_t n = or_n ? or_n : static_cast<std::uint32_t>(e.degree(or_p));
        ModuleRep m = evaluate_functor(e, n, or_p, b);
        emit("{\"expr\":\"" + e.str() + "\",\"n\":" + std::to_string(n) +
             ",\"dim\":" + std::to_string(m.dim) + "}");
    });

    // crosscheck
    std::uint32_t cc_p = 0, cc_r = 1, cc_maxdeg = 0;
    auto* cc = app.add_subcommand(
        "crosscheck", "compare engine untwisting with the brute-force oracle on the identity");
    cc->add_option("--p", cc_p, "characteristic")->required();
    cc->add_option("--r", cc_r, "twist level (default 1; p^r bounded by the algebra budget)");
    cc->add_option("--maxdeg", cc_maxdeg, "largest Ext degree (default 2 p^r - 2)");
    cc->callback([&] {
        Budget b = Budget::from_env();
        ExtTable id_table;
        id_table.d = 1;
        id_table.entries[{1}] = GradedDims({{0, 1}});
        GradedDims engine = untwist::untwist(id_table, cc_p, cc_r);
        auto q = static_cast<std::uint32_t>(ipow(cc_p, cc_r));
        std::uint32_t maxdeg = cc_maxdeg ? cc_maxdeg : 2 * q - 2;
        FunctorExpr fr;
        fr.kind = FunctorExpr::Kind::Fr;
        fr.r = cc_r;
        GradedDims oracle = oracle_ext(fr, fr, cc_p, q, maxdeg, b);
        bool match = true;
        for (std::uint64_t deg = 0; deg <= maxdeg; ++deg)
            match = match && engine.at(deg) == oracle.at(deg);
        emit("{\"engine\":" + write_graded_dims(engine) +
             ",\"oracle\":" + write_graded_dims(oracle) +
             ",\"match\":" + (match ? "true" : "false") + "}");
        require(match, ErrorCode::mismatch, "engine and oracle disagree");
    });

    // selftest
    bool self_quick = false;
    std::uint64_t self_seed = 12345;
    auto* self = app.add_subcommand("selftest", "run the acceptance suite");
    self->add_flag("--quick", self_quick, "smaller random samples, skip the largest cases");
    self->add_option("--seed", self_seed, "seed for the randomized property checks");
    int self_failures = 0;
    self->callback([&] {
        untwist::selftest::Options opt;
        opt.quick = self_quick;
        opt.seed = self_seed;
        self_failures = untwist::selftest::run(opt, std::cout);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorCode::internal);
    }
    return self_failures == 0 ? 0 : 1;
}
