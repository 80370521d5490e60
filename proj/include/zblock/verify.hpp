#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "blocks.hpp"
#include "center.hpp"
#include "errors.hpp"
#include "gf.hpp"
#include "group.hpp"

namespace zblock {

using ordered_json = nlohmann::ordered_json;

struct AnalyzeOptions {
    int element_cap = kDefaultElementCap;
    int class_cap = kDefaultClassCap;
    int field_degree = 0; // 0 = computed splitting degree
    uint64_t seed = 0;
};

struct DefectGroupReport {
    long long order = 1;
    long long exponent = 1;
    bool abelian = true;
    bool cyclic = true;
    std::vector<long long> invariants;
};

struct BlockReport {
    int index = 0;
    int k = 0, l = 0;
    LoewySeries loewy;
    int defect = 0;
    DefectGroupReport dg;
    int epsilon = 0;
    bool dg_normal = false;
    std::optional<long long> inertial_e;
    long long lambda = 0;
    std::vector<LambdaWitness> witnesses;
};

struct AnalysisReport {
    std::string group;
    long long order = 0;
    int prime = 0;
    int field_k = 1;
    std::vector<int> modulus_coeffs;
    int num_classes = 0;
    int num_p_regular_classes = 0;
    LoewySeries center_loewy;
    int prime_field_center_loewy = 0; // cross-check value, not serialized
    std::vector<BlockReport> blocks;
    double seconds = 0.0; // not serialized
};

/// Runs the full pipeline for one (group, prime): group generation,
/// splitting field, center, blocks, invariants, defect data, lambda, e(B).
inline AnalysisReport analyze(const GroupSpec& spec, int p, const AnalyzeOptions& opts = {}) {
    auto t0 = std::chrono::steady_clock::now();
    if (p < 2 || !gfdetail::is_prime(p)) throw ParseError("characteristic " + std::to_string(p) + " is not prime");
    Group g = Group::generate(spec, opts.element_cap);
    int k_needed = splitting_degree(g, p);
    int k_used = k_needed;
    if (opts.field_degree > 0) {
        if (opts.field_degree < k_needed || opts.field_degree % k_needed != 0)
            throw ParseError("field degree " + std::to_string(opts.field_degree) +
                             " does not contain the splitting field GF(" + std::to_string(p) + "^" +
                             std::to_string(k_needed) + ")");
        k_used = opts.field_degree;
    }
    FieldContext field = make_field(p, k_used);
    BlockAnalyzer an(g, p, field, opts.seed, opts.class_cap);

    AnalysisReport rep;
    rep.group = spec.name.empty() ? "G" : spec.name;
    rep.order = g.order();
    rep.prime = p;
    rep.field_k = k_used;
    rep.modulus_coeffs = field.modulus();
    rep.num_classes = g.num_classes();
    for (int c = 0; c < g.num_classes(); ++c)
        if (g.element_order(g.class_rep(c)) % p != 0) ++rep.num_p_regular_classes;

    rep.center_loewy = loewy_series(an.data().z, an.data().jrad);
    for (int b = 0; b < an.data().num_blocks(); ++b) {
        BlockProfile prof = an.profile(b);
        BlockReport br;
        br.index = prof.index;
        br.k = prof.k;
        br.l = prof.l;
        br.loewy = prof.loewy;
        br.defect = prof.defect_d;
        br.dg.order = prof.dg_type.order;
        br.dg.exponent = prof.dg_type.exponent;
        br.dg.abelian = prof.dg_type.is_abelian;
        br.dg.cyclic = prof.dg_type.is_cyclic;
        br.dg.invariants = prof.dg_type.invariant_factors;
        br.epsilon = prof.epsilon;
        br.dg_normal = prof.dg_normal_in_g;
        br.inertial_e = prof.inertial_e;
        br.lambda = prof.lambda.value_or(0);
        br.witnesses = prof.witnesses;
        rep.blocks.push_back(std::move(br));
    }

    // whole-center Loewy length over the prime field (radical dims are
    // stable under the separable base change, so these must agree)
    {
        FieldContext fp = make_field(p, 1);
        CenterAlgebra zp = CenterAlgebra::build(g, fp, opts.class_cap);
        rep.prime_field_center_loewy = loewy_series(zp, nilradical(zp)).length;
    }

    // report invariants
    int sum_k = 0, sum_l = 0, max_ll = 0;
    for (auto& b : rep.blocks) {
        sum_k += b.k;
        sum_l += b.l;
        max_ll = std::max(max_ll, b.loewy.length);
    }
    check_internal(sum_k == rep.num_classes, "sum of k(B) != number of classes");
    check_internal(sum_l == rep.num_p_regular_classes, "sum of l(B) != number of p-regular classes");
    check_internal(max_ll == rep.center_loewy.length, "whole-center LL != max block LL");
    check_internal(rep.prime_field_center_loewy == rep.center_loewy.length,
                   "prime-field and splitting-field center LL disagree");

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

enum class Verdict { Pass, Fail, NotApplicable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "not-applicable";
    }
}

struct CheckResult {
    std::string id;
    std::string statement;
    Verdict verdict = Verdict::NotApplicable;
    std::optional<long long> bound;
    std::optional<long long> observed;
    std::string detail;
};

namespace detail {

inline long long ipow(long long base, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

inline std::string invariants_str(const std::vector<long long>& inv) {
    if (inv.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < inv.size(); ++i) s += (i ? "x" : "") + std::to_string(inv[i]);
    return s;
}

} // namespace detail

/// Evaluates every supported statement on one report. Block-scoped checks
/// produce one result per block; a false premise is recorded as
/// not-applicable. Any fail indicates an implementation bug, never a
/// disproof.
inline std::vector<CheckResult> check_all(const AnalysisReport& r) {
    std::vector<CheckResult> out;
    const long long p = r.prime;

    {
        CheckResult c;
        c.id = "chk-thm1.1";
        c.statement = "LL(Z(FG)) <= (p^(a+1)-1)/(p-1), a = nu_p(|G|)";
        int a = detail::p_part(r.order, r.prime);
        c.bound = (detail::ipow(p, a + 1) - 1) / (p - 1);
        c.observed = r.center_loewy.length;
        c.verdict = (*c.observed <= *c.bound) ? Verdict::Pass : Verdict::Fail;
        c.detail = "whole center, a=" + std::to_string(a);
        out.push_back(std::move(c));
    }

    for (const auto& b : r.blocks) {
        const long long dorder = detail::ipow(p, b.defect);
        const long long ll = b.loewy.length;
        const long long thm13_bound = dorder - detail::ipow(p, b.defect - b.epsilon) + 1;
        const std::string blk = "block " + std::to_string(b.index);
        auto push = [&](CheckResult c) { out.push_back(std::move(c)); };

        {
            CheckResult c;
            c.id = "chk-thm1.2";
            c.statement = "LL(ZB) <= |D|, with equality iff D cyclic and e(B) = 1";
            c.bound = dorder;
            c.observed = ll;
            if (ll > dorder) {
                c.verdict = Verdict::Fail;
                c.detail = blk + ": bound violated";
            } else if (!b.inertial_e) {
                if (ll == dorder || b.dg.cyclic) {
                    c.verdict = Verdict::NotApplicable;
                    c.detail = blk + ": equality cases unchecked, inertial index unavailable";
                } else {
                    c.verdict = Verdict::Pass;
                    c.detail = blk;
                }
            } else {
                bool eq = (ll == dorder);
                bool nilpotent_cyclic = b.dg.cyclic && *b.inertial_e == 1;
                if (eq && !nilpotent_cyclic) {
                    c.verdict = Verdict::Fail;
                    c.detail = blk + ": equality without cyclic nilpotent defect group";
                } else if (!eq && nilpotent_cyclic) {
                    c.verdict = Verdict::Fail;
                    c.detail = blk + ": cyclic nilpotent block with LL < |D|";
                } else {
                    c.verdict = Verdict::Pass;
                    c.detail = blk + (eq ? ": equality, D cyclic, e=1" : "");
                }
            }
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-thm1.3";
            c.statement = "LL(ZB) <= p^d - p^(d-eps) + 1";
            c.bound = thm13_bound;
            c.observed = ll;
            c.verdict = (ll <= thm13_bound) ? Verdict::Pass : Verdict::Fail;
            c.detail = blk + ": d=" + std::to_string(b.defect) + " eps=" + std::to_string(b.epsilon);
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-step1";
            c.statement = "LL(ZB) <= lambda(B) + 1";
            c.bound = b.lambda + 1;
            c.observed = ll;
            c.verdict = (ll <= b.lambda + 1) ? Verdict::Pass : Verdict::Fail;
            c.detail = blk + ": lambda=" + std::to_string(b.lambda);
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-step2";
            c.statement = "lambda(B) + 1 <= p^d - p^(d-eps) + 1";
            c.bound = thm13_bound;
            c.observed = b.lambda + 1;
            c.verdict = (b.lambda + 1 <= thm13_bound) ? Verdict::Pass : Verdict::Fail;
            c.detail = blk;
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-cor3.1";
            c.statement = "LL(ZB) = p^d - p^(d-eps) + 1 implies D = C_{p^eps} x C_{p^(d-eps)}";
            c.bound = thm13_bound;
            c.observed = ll;
            if (ll != thm13_bound) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": bound not attained";
            } else {
                std::vector<long long> expect;
                if (b.epsilon > 0) expect.push_back(detail::ipow(p, b.epsilon));
                if (b.defect - b.epsilon > 0) expect.push_back(detail::ipow(p, b.defect - b.epsilon));
                bool ok = b.dg.abelian && b.dg.invariants == expect;
                c.verdict = ok ? Verdict::Pass : Verdict::Fail;
                c.detail = blk + ": D = " + detail::invariants_str(b.dg.invariants) + ", expected " +
                           detail::invariants_str(expect);
            }
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-prop2.1";
            c.statement = "d(B) = 0 iff LL(ZB) = 1";
            c.bound = 1;
            c.observed = ll;
            bool ok = (b.defect == 0) == (ll == 1);
            c.verdict = ok ? Verdict::Pass : Verdict::Fail;
            c.detail = blk + ": d=" + std::to_string(b.defect);
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-prop2.2";
            c.statement = "LL(ZB) <= k(B) - l(B) + 1";
            c.bound = static_cast<long long>(b.k) - b.l + 1;
            c.observed = ll;
            c.verdict = (ll <= *c.bound) ? Verdict::Pass : Verdict::Fail;
            c.detail = blk + ": k=" + std::to_string(b.k) + " l=" + std::to_string(b.l);
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-prop2.3";
            c.statement = "D cyclic implies LL(ZB) = (|D|-1)/e(B) + 1";
            if (!b.dg.cyclic) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": D not cyclic";
            } else if (!b.inertial_e) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": inertial index unavailable";
            } else {
                long long e = *b.inertial_e;
                bool divides = (dorder - 1) % e == 0;
                c.bound = divides ? (dorder - 1) / e + 1 : -1;
                c.observed = ll;
                c.verdict = (divides && ll == *c.bound) ? Verdict::Pass : Verdict::Fail;
                c.detail = blk + ": |D|=" + std::to_string(dorder) + " e=" + std::to_string(e);
            }
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-lem2.4";
            c.statement = "D normal in G, D = C_{p^m} x C_{p^n} implies LL(ZB) <= p^m + p^n - 1";
            bool rank2 = b.dg.abelian && b.dg.invariants.size() == 2;
            if (!b.dg_normal || !rank2) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + (!b.dg_normal ? ": D not normal" : ": D not abelian of rank 2");
            } else {
                c.bound = b.dg.invariants[0] + b.dg.invariants[1] - 1;
                c.observed = ll;
                c.verdict = (ll <= *c.bound) ? Verdict::Pass : Verdict::Fail;
                c.detail = blk + ": D = " + detail::invariants_str(b.dg.invariants);
            }
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-prop2.5";
            c.statement = "p=2, D = C_{2^m} x C_{2^n}: e=1 -> (k,l,LL) = (|D|,1,2^m+2^n-1); "
                          "D = C2xC2, e=3 -> (k,l,LL) = (4,3,2); D = C_{2^m} x C_{2^m}, m>=2, e=3 -> "
                          "LL <= 2^(m+1)-1";
            bool applies = (p == 2) && b.dg.abelian && b.dg.invariants.size() <= 2 && b.defect >= 1;
            if (!applies) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": not a positive-defect abelian rank <= 2 case at p=2";
            } else if (!b.inertial_e) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": inertial index unavailable";
            } else {
                long long m = detail::p_part(b.dg.invariants[0], 2);
                long long n = b.dg.invariants.size() > 1 ? detail::p_part(b.dg.invariants[1], 2) : 0;
                long long e = *b.inertial_e;
                c.observed = ll;
                if (e == 1) {
                    c.bound = detail::ipow(2, static_cast<int>(m)) + detail::ipow(2, static_cast<int>(n)) - 1;
                    bool ok = (b.k == dorder) && (b.l == 1) && (ll == *c.bound);
                    c.verdict = ok ? Verdict::Pass : Verdict::Fail;
                    c.detail = blk + ": nilpotent case, k=" + std::to_string(b.k) + " l=" + std::to_string(b.l);
                } else if (e == 3 && m == 1 && n == 1) {
                    c.bound = 2;
                    bool ok = (b.k == 4) && (b.l == 3) && (ll == 2);
                    c.verdict = ok ? Verdict::Pass : Verdict::Fail;
                    c.detail = blk + ": Klein-four e=3 case, k=" + std::to_string(b.k) + " l=" + std::to_string(b.l);
                } else if (e == 3 && m == n && m >= 2) {
                    c.bound = detail::ipow(2, static_cast<int>(m) + 1) - 1;
                    c.verdict = (ll <= *c.bound) ? Verdict::Pass : Verdict::Fail;
                    c.detail = blk + ": homocyclic e=3 case";
                } else {
                    c.verdict = Verdict::Fail;
                    c.detail = blk + ": e=" + std::to_string(e) + " outside the classified cases";
                }
            }
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-prop2.6";
            c.statement = "p=3, D = C_{3^n} x C_3 implies LL(ZB) <= 3^n + 2 and LL(ZB) <= |D| - 4";
            bool applies = (p == 3) && b.dg.abelian && b.dg.invariants.size() == 2 && b.dg.invariants[1] == 3;
            if (!applies) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": defect group is not C_{3^n} x C_3";
            } else {
                long long n = detail::p_part(b.dg.invariants[0], 3);
                long long bound1 = detail::ipow(3, static_cast<int>(n)) + 2;
                long long bound2 = dorder - 4;
                c.bound = std::min(bound1, bound2);
                c.observed = ll;
                c.verdict = (ll <= bound1 && ll <= bound2) ? Verdict::Pass : Verdict::Fail;
                c.detail = blk + ": bounds " + std::to_string(bound1) + ", " + std::to_string(bound2);
            }
            push(std::move(c));
        }
        // large-Loewy-length classification triggers; membership is decided
        // by defect-group type plus the (e, k, l) fingerprint
        {
            CheckResult c;
            c.id = "chk-thm1.4";
            c.statement = "LL(ZB) = |D|-1 implies D = C3, or D = C2xC2 with (e,k,l) = (1,4,1)";
            c.bound = dorder - 1;
            c.observed = ll;
            if (ll != dorder - 1) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": trigger not met";
            } else {
                bool c3 = b.dg.invariants == std::vector<long long>{3};
                bool klein_fd = b.dg.invariants == std::vector<long long>{2, 2} && b.inertial_e &&
                                *b.inertial_e == 1 && b.k == 4 && b.l == 1;
                c.verdict = (c3 || klein_fd) ? Verdict::Pass : Verdict::Fail;
                c.detail = blk + ": D = " + detail::invariants_str(b.dg.invariants) +
                           (c3 ? ", case C3" : klein_fd ? ", case C2xC2 Morita-FD fingerprint" : ", no case matches");
            }
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-thm1.5";
            c.statement = "LL(ZB) = |D|-2 implies D = C5, or D = C2xC2 with (e,k,l,LL) = (3,4,3,2)";
            c.bound = dorder - 2;
            c.observed = ll;
            if (ll != dorder - 2) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": trigger not met";
            } else {
                bool c5 = b.dg.invariants == std::vector<long long>{5};
                bool klein = b.dg.invariants == std::vector<long long>{2, 2} && b.inertial_e &&
                             *b.inertial_e == 3 && b.k == 4 && b.l == 3 && ll == 2;
                c.verdict = (c5 || klein) ? Verdict::Pass : Verdict::Fail;
                c.detail = blk + ": D = " + detail::invariants_str(b.dg.invariants) +
                           (c5 ? ", case C5"
                               : klein ? ", consistent with {F A4, principal F A5}" : ", no case matches");
            }
            push(std::move(c));
        }
        {
            CheckResult c;
            c.id = "chk-thm1.6";
            c.statement = "LL(ZB) = |D|-3 implies D = C5, D = C7, or D = C4xC2 with (e,k,l) = (1,8,1)";
            c.bound = dorder - 3;
            c.observed = ll;
            if (ll != dorder - 3) {
                c.verdict = Verdict::NotApplicable;
                c.detail = blk + ": trigger not met";
            } else {
                bool c5 = b.dg.invariants == std::vector<long long>{5};
                bool c7 = b.dg.invariants == std::vector<long long>{7};
                bool c4c2 = b.dg.invariants == std::vector<long long>{4, 2} && b.inertial_e &&
                            *b.inertial_e == 1 && b.k == 8 && b.l == 1;
                c.verdict = (c5 || c7 || c4c2) ? Verdict::Pass : Verdict::Fail;
                c.detail = blk + ": D = " + detail::invariants_str(b.dg.invariants) +
                           (c5 ? ", case C5"
                               : c7 ? ", case C7" : c4c2 ? ", case C4xC2 Morita-FD fingerprint" : ", no case matches");
            }
            push(std::move(c));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization

inline ordered_json report_to_json(const AnalysisReport& r, const std::vector<CheckResult>& checks) {
    ordered_json j;
    j["group"] = r.group;
    j["order"] = r.order;
    j["prime"] = r.prime;
    j["field"] = ordered_json{{"p", r.prime}, {"k", r.field_k}, {"modulus_coeffs", r.modulus_coeffs}};
    j["num_classes"] = r.num_classes;
    j["num_p_regular_classes"] = r.num_p_regular_classes;
    j["center_loewy"] = r.center_loewy.length;
    j["blocks"] = ordered_json::array();
    for (const auto& b : r.blocks) {
        ordered_json jb;
        jb["index"] = b.index;
        jb["k"] = b.k;
        jb["l"] = b.l;
        jb["loewy"] = b.loewy.length;
        jb["loewy_chain"] = b.loewy.dims;
        jb["defect"] = b.defect;
        jb["defect_group"] = ordered_json{{"order", b.dg.order},
                                          {"exponent", b.dg.exponent},
                                          {"abelian", b.dg.abelian},
                                          {"cyclic", b.dg.cyclic},
                                          {"invariants", b.dg.invariants}};
        if (b.inertial_e) jb["inertial_e"] = *b.inertial_e;
        else jb["inertial_e"] = nullptr;
        jb["lambda"] = b.lambda;
        jb["lambda_witnesses"] = ordered_json::array();
        for (const auto& w : b.witnesses) {
            ordered_json jw;
            jw["x_class"] = w.x_class;
            jw["x_order"] = w.x_order;
            jw["bar_blocks"] = ordered_json::array();
            for (auto& [qb, ll] : w.bar_blocks) jw["bar_blocks"].push_back(ordered_json{{"block", qb}, {"loewy", ll}});
            jw["lambda_x"] = w.lambda_x;
            jw["contribution"] = w.contribution;
            jb["lambda_witnesses"].push_back(std::move(jw));
        }
        j["blocks"].push_back(std::move(jb));
    }
    j["checks"] = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["verdict"] = to_string(c.verdict);
        if (c.bound) jc["bound"] = *c.bound;
        else jc["bound"] = nullptr;
        if (c.observed) jc["observed"] = *c.observed;
        else jc["observed"] = nullptr;
        jc["detail"] = c.detail;
        j["checks"].push_back(std::move(jc));
    }
    return j;
}

inline std::string report_to_csv(const AnalysisReport& r) {
    std::ostringstream out;
    out << "group,order,prime,block,k,l,loewy,defect,dg_order,dg_exponent,dg_abelian,dg_cyclic,dg_invariants,"
           "inertial_e,lambda\n";
    for (const auto& b : r.blocks) {
        out << r.group << ',' << r.order << ',' << r.prime << ',' << b.index << ',' << b.k << ',' << b.l << ','
            << b.loewy.length << ',' << b.defect << ',' << b.dg.order << ',' << b.dg.exponent << ','
            << (b.dg.abelian ? 1 : 0) << ',' << (b.dg.cyclic ? 1 : 0) << ',' << detail::invariants_str(b.dg.invariants)
            << ',' << (b.inertial_e ? std::to_string(*b.inertial_e) : "") << ',' << b.lambda << '\n';
    }
    return out.str();
}

inline std::string report_to_markdown(const AnalysisReport& r, const std::vector<CheckResult>& checks) {
    std::ostringstream out;
    out << "## " << r.group << " (order " << r.order << "), p = " << r.prime << "\n\n";
    out << "Field GF(" << r.prime << "^" << r.field_k << "), " << r.num_classes << " classes, "
        << r.num_p_regular_classes << " p-regular, LL(Z(FG)) = " << r.center_loewy.length << "\n\n";
    out << "| block | k | l | LL | d | D | e | lambda |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& b : r.blocks) {
        out << "| " << b.index << " | " << b.k << " | " << b.l << " | " << b.loewy.length << " | " << b.defect
            << " | " << detail::invariants_str(b.dg.invariants);
        if (!b.dg.abelian) out << " (nonabelian " << b.dg.order << ", exp " << b.dg.exponent << ")";
        out << " | " << (b.inertial_e ? std::to_string(*b.inertial_e) : "-") << " | " << b.lambda << " |\n";
    }
    out << "\n| check | verdict | bound | observed | detail |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& c : checks) {
        out << "| " << c.id << " | " << to_string(c.verdict) << " | "
            << (c.bound ? std::to_string(*c.bound) : "-") << " | "
            << (c.observed ? std::to_string(*c.observed) : "-") << " | " << c.detail << " |\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// catalog runner

struct CatalogEntry {
    std::string name;
    std::string source; // path (relative to manifest) or "builtin: ..."
    std::vector<int> primes;
    std::map<int, ordered_json> expected; // prime -> {"blocks": [{k,l,loewy,defect,e}]}
};

inline std::vector<CatalogEntry> parse_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog manifest '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("manifest JSON parse error: " + std::string(e.what()));
    }
    if (!j.is_array()) throw ParseError("manifest must be a JSON array");
    std::vector<CatalogEntry> entries;
    for (const auto& je : j) {
        CatalogEntry e;
        if (!je.contains("name") || !je.contains("source") || !je.contains("primes"))
            throw ParseError("manifest entry needs 'name', 'source', 'primes'");
        e.name = je["name"].get<std::string>();
        e.source = je["source"].get<std::string>();
        for (const auto& p : je["primes"]) e.primes.push_back(p.get<int>());
        if (je.contains("expected"))
            for (auto it = je["expected"].begin(); it != je["expected"].end(); ++it)
                e.expected[std::stoi(it.key())] = it.value();
        entries.push_back(std::move(e));
    }
    return entries;
}

inline GroupSpec load_group_source(const std::string& source, const std::filesystem::path& base_dir) {
    const std::string builtin_prefix = "builtin:";
    if (source.rfind(builtin_prefix, 0) == 0) return builtin_spec(detail::trim(source.substr(builtin_prefix.size())));
    std::filesystem::path p = source;
    if (p.is_relative()) p = base_dir / p;
    std::ifstream in(p);
    if (!in) throw ParseError("cannot open group file '" + p.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_group_file(buf.str());
}

/// Compares computed blocks with the optional expected profile (a multiset
/// of {k, l, loewy, defect, e} records). Returns a list of mismatch
/// descriptions, empty when consistent.
inline std::vector<std::string> compare_expected(const AnalysisReport& r, const ordered_json& expected) {
    std::vector<std::string> issues;
    if (!expected.contains("blocks")) return issues;
    using Tuple = std::vector<long long>;
    std::multiset<Tuple> want, have;
    for (const auto& jb : expected["blocks"]) {
        want.insert(Tuple{jb.at("k").get<long long>(), jb.at("l").get<long long>(), jb.at("loewy").get<long long>(),
                          jb.at("defect").get<long long>(), jb.at("e").get<long long>()});
    }
    for (const auto& b : r.blocks)
        have.insert(Tuple{b.k, b.l, b.loewy.length, b.defect, b.inertial_e.value_or(-1)});
    if (want != have) {
        auto fmt = [](const std::multiset<Tuple>& s) {
            std::string out;
            for (auto& t : s) {
                out += "(";
                for (size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
                out += ")";
            }
            return out;
        };
        issues.push_back("expected blocks " + fmt(want) + " but computed " + fmt(have));
    }
    return issues;
}

struct RunOptions {
    int jobs = 0; // 0 = hardware parallelism
    uint64_t seed = 0;
    std::string out_dir;
    int element_cap = kDefaultElementCap;
};

struct CatalogResult {
    ordered_json summary;
    int exit_code = 0;
};

/// Analyzes and checks every (entry, prime) pair of a manifest. Exit codes:
/// 0 all pass, 1 any check failure or expected-value mismatch, 2 input
/// error, 3 resource cap.
inline CatalogResult run_catalog(const std::string& manifest_path, const RunOptions& opts = {}) {
    std::vector<CatalogEntry> entries;
    std::filesystem::path base_dir;
    try {
        entries = parse_manifest(manifest_path);
        base_dir = std::filesystem::absolute(manifest_path).parent_path();
    } catch (const ParseError&) {
        throw;
    }

    struct Job {
        const CatalogEntry* entry;
        int prime;
    };
    std::vector<Job> jobs;
    for (const auto& e : entries)
        for (int p : e.primes) jobs.push_back({&e, p});

    struct JobResult {
        bool ok = false;
        int error_class = 0; // 0 none, 1 fail, 2 input, 3 cap
        std::string message;
        int pass = 0, fail = 0, na = 0;
        std::vector<std::string> mismatches;
        ordered_json report_json;
        std::string group;
        int prime = 0;
    };
    std::vector<JobResult> results(jobs.size());

    auto run_job = [&](size_t idx) {
        const Job& job = jobs[idx];
        JobResult& res = results[idx];
        res.group = job.entry->name;
        res.prime = job.prime;
        try {
            GroupSpec spec = load_group_source(job.entry->source, base_dir);
            if (!job.entry->name.empty()) spec.name = job.entry->name;
            AnalyzeOptions aopts;
            aopts.seed = opts.seed;
            aopts.element_cap = opts.element_cap;
            AnalysisReport rep = analyze(spec, job.prime, aopts);
            auto checks = check_all(rep);
            for (const auto& c : checks) {
                if (c.verdict == Verdict::Pass) ++res.pass;
                else if (c.verdict == Verdict::Fail) ++res.fail;
                else ++res.na;
            }
            auto it = job.entry->expected.find(job.prime);
            if (it != job.entry->expected.end()) res.mismatches = compare_expected(rep, it->second);
            res.report_json = report_to_json(rep, checks);
            res.ok = (res.fail == 0) && res.mismatches.empty();
            if (!res.ok) res.error_class = 1;
        } catch (const ParseError& e) {
            res.error_class = 2;
            res.message = e.what();
        } catch (const CapError& e) {
            res.error_class = 3;
            res.message = e.what();
        } catch (const std::exception& e) {
            res.error_class = 1;
            res.message = e.what();
        }
    };

    int njobs = opts.jobs > 0 ? opts.jobs : static_cast<int>(std::thread::hardware_concurrency());
    if (njobs < 1) njobs = 1;
    if (njobs == 1 || jobs.size() <= 1) {
        for (size_t i = 0; i < jobs.size(); ++i) run_job(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < njobs; ++t)
            pool.emplace_back([&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) break;
                    run_job(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(opts.out_dir);
        for (const auto& res : results) {
            if (res.report_json.is_null()) continue;
            std::string fname = res.group + "_p" + std::to_string(res.prime) + ".json";
            std::ofstream out(std::filesystem::path(opts.out_dir) / fname);
            out << res.report_json.dump(2) << "\n";
        }
    }

    CatalogResult out;
    int total_pass = 0, total_fail = 0, total_na = 0, mismatches = 0;
    ordered_json jresults = ordered_json::array();
    int exit_code = 0;
    for (const auto& res : results) {
        total_pass += res.pass;
        total_fail += res.fail;
        total_na += res.na;
        mismatches += static_cast<int>(res.mismatches.size());
        ordered_json jr;
        jr["group"] = res.group;
        jr["prime"] = res.prime;
        if (res.error_class == 2 || res.error_class == 3) {
            jr["status"] = "error";
            jr["message"] = res.message;
        } else if (!res.ok) {
            jr["status"] = "fail";
            if (!res.message.empty()) jr["message"] = res.message;
            if (!res.mismatches.empty()) jr["mismatches"] = res.mismatches;
        } else {
            jr["status"] = "ok";
        }
        jr["checks"] = ordered_json{{"pass", res.pass}, {"fail", res.fail}, {"not_applicable", res.na}};
        jresults.push_back(std::move(jr));
        if (res.error_class == 2) exit_code = 2;
        else if (res.error_class == 3 && exit_code != 2) exit_code = 3;
        else if (res.error_class == 1 && exit_code == 0) exit_code = 1;
    }
    out.summary["entries"] = entries.size();
    out.summary["analyses"] = jobs.size();
    out.summary["checks"] = ordered_json{{"pass", total_pass}, {"fail", total_fail}, {"not_applicable", total_na}};
    out.summary["expected_mismatches"] = mismatches;
    out.summary["results"] = std::move(jresults);
    out.summary["all_pass"] = (exit_code == 0);
    out.exit_code = exit_code;
    return out;
}

} // namespace zblock
