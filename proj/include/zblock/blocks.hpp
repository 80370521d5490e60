#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "center.hpp"
#include "errors.hpp"
#include "gf.hpp"
#include "group.hpp"
#include "linalg.hpp"

namespace zblock {

/// nu_p of the centralizer order of a class representative.
inline int class_defect(const Group& g, int cls, int p) {
    long long cent = g.order() / g.class_size(cls);
    return detail::p_part(cent, p);
}

/// Center algebra of one group together with its block decomposition,
/// central characters, section sums and per-block invariants. Heap-only:
/// the contained elements point back into this object.
///
/// `with_invariants = false` skips the per-block Loewy chains; callers that
/// only need idempotents and characters (centralizers during the lambda
/// computation, root hunting in D C_G(D)) save the dominant cost.
struct GroupBlockData {
    const Group* g = nullptr;
    const FieldContext* f = nullptr;
    int p = 0;
    CenterAlgebra z;
    Subspace jrad;
    std::vector<BlockIdempotent> blocks;
    std::vector<std::vector<int>> chars; // [block][class] field codes
    std::vector<CentralElement> sections;
    std::vector<BlockInvariants> invariants; // empty when skipped

    GroupBlockData() = default;
    GroupBlockData(const GroupBlockData&) = delete;
    GroupBlockData& operator=(const GroupBlockData&) = delete;

    static std::unique_ptr<GroupBlockData> build(const Group& g, int p, const FieldContext& f, uint64_t seed,
                                                 int class_cap = kDefaultClassCap, bool with_invariants = true) {
        auto d = std::make_unique<GroupBlockData>();
        d->g = &g;
        d->f = &f;
        d->p = p;
        d->z = CenterAlgebra::build(g, f, class_cap);
        d->jrad = nilradical(d->z);
        d->blocks = block_idempotents(d->z, seed);
        for (auto& b : d->blocks) {
            Matrix me = d->z.mult_matrix(b.idempotent);
            Subspace je = d->jrad.image_under(me);
            std::vector<std::vector<int>> rows;
            rows.push_back(b.idempotent.coords);
            for (int i = 0; i < je.dim(); ++i) rows.push_back(je.basis().row(i));
            Matrix solver = Matrix::from_rows(f, rows);
            std::vector<int> table(d->z.dim());
            for (int cls = 0; cls < d->z.dim(); ++cls) {
                // column cls of me is e * Chat_cls
                std::vector<int> col(d->z.dim());
                for (int i = 0; i < d->z.dim(); ++i) col[i] = me.at(i, cls);
                auto combo = solver.solve_rows(col);
                check_internal(combo.has_value(), "central character solve failed");
                table[cls] = (*combo)[0];
            }
            d->chars.push_back(std::move(table));
        }
        d->sections = section_sums(d->z, p);
        if (with_invariants)
            for (auto& b : d->blocks) d->invariants.push_back(block_invariants(d->z, d->jrad, b, d->sections));
        return d;
    }

    int num_blocks() const { return static_cast<int>(blocks.size()); }
};

struct DefectResult {
    int d = 0;
    int defect_class = 0; // smallest class index attaining d with nonzero character
    Subgroup group;       // Sylow_p of the centralizer of its representative
};

/// Defect and defect group of a block: d is the maximal class defect over
/// the support of 1_B; a class attaining it with lambda_B != 0 is a defect
/// class, and D = Sylow_p(C_G(x)) for its representative.
inline DefectResult defect_and_group(const GroupBlockData& data, int block) {
    const Group& g = *data.g;
    const auto& e = data.blocks[block];
    int d = -1;
    for (int cls = 0; cls < data.z.dim(); ++cls)
        if (e.idempotent.coords[cls] != 0) d = std::max(d, class_defect(g, cls, data.p));
    check_internal(d >= 0, "block idempotent has empty support");
    int defect_class = -1;
    for (int cls = 0; cls < data.z.dim(); ++cls) {
        if (e.idempotent.coords[cls] == 0) continue;
        if (class_defect(g, cls, data.p) != d) continue;
        if (data.chars[block][cls] != 0) {
            defect_class = cls;
            break;
        }
    }
    check_internal(defect_class >= 0, "no defect class found for block");
    Subgroup cent = centralizer(g, g.class_rep(defect_class));
    DefectResult out;
    out.d = d;
    out.defect_class = defect_class;
    out.group = sylow_in(g, cent.members, data.p);
    check_internal(detail::p_part(out.group.order(), data.p) == d &&
                       detail::power_of(data.p, d) == out.group.order(),
                   "defect group order disagrees with class defect");
    return out;
}

/// sigma_x: truncation of a central element of FG to C_G(x), re-expressed
/// in C_G(x)-class-sum coordinates.
inline CentralElement brauer_sigma(const GroupBlockData& parent, const SubgroupGroup& cent,
                                   const GroupBlockData& local, const CentralElement& a) {
    std::vector<int> coords(local.z.dim());
    for (int hc = 0; hc < local.z.dim(); ++hc) {
        int parent_elt = cent.to_parent[local.g->class_rep(hc)];
        coords[hc] = a.coords[parent.g->class_of(parent_elt)];
    }
    return local.z.element(std::move(coords));
}

/// Everything attached to one p-element x up to conjugacy: the centralizer
/// H = C_G(x) with its block data, the central quotient H/<x> with its
/// block data, and for each block b of FH the image block of tau_x with its
/// center's Loewy length.
struct LocalStructure {
    int x = 0; // parent element index (class representative)
    int x_class = 0;
    long long x_order = 1;
    SubgroupGroup cent;
    std::unique_ptr<GroupBlockData> H;
    QuotientResult quo; // quotient of cent.group by <x>
    std::unique_ptr<GroupBlockData> Q;
    std::vector<std::pair<int, int>> tau; // per H-block: (Q-block, LL of its center)

    LocalStructure() = default;
    LocalStructure(const LocalStructure&) = delete;
    LocalStructure& operator=(const LocalStructure&) = delete;
};

/// tau_x(1_b) for one block b of F C_G(x): pushes the idempotent through
/// the coset-collapsing quotient map and identifies it as a block
/// idempotent of the quotient algebra. It must be exactly one; anything
/// else is a consistency failure.
inline std::pair<int, int> tau_bar_block(const LocalStructure& ls, int h_block) {
    const GroupBlockData& H = *ls.H;
    const GroupBlockData& Q = *ls.Q;
    const FieldContext& f = *H.f;
    const auto& idem = H.blocks[h_block].idempotent;
    const Group& hg = *H.g;
    const Group& qg = *Q.g;
    std::vector<int> elt_coeff(qg.order(), 0);
    for (int h = 0; h < hg.order(); ++h) {
        int qe = ls.quo.map[h];
        elt_coeff[qe] = f.add(elt_coeff[qe], idem.coords[hg.class_of(h)]);
    }
    std::vector<int> coords(qg.num_classes());
    for (int qc = 0; qc < qg.num_classes(); ++qc) {
        int rep = qg.class_rep(qc);
        for (int member : qg.class_members(qc))
            check_internal(elt_coeff[member] == elt_coeff[rep], "tau image is not central in the quotient");
        coords[qc] = elt_coeff[rep];
    }
    CentralElement img = Q.z.element(std::move(coords));
    if (!(Q.z.mul(img, img) == img) || img.is_zero())
        throw InternalError("tau image of a block idempotent is not a nonzero idempotent");
    int found = -1;
    for (int qb = 0; qb < Q.num_blocks(); ++qb) {
        if (!Q.z.mul(img, Q.blocks[qb].idempotent).is_zero()) {
            if (found >= 0) throw InternalError("tau image covers more than one quotient block");
            found = qb;
        }
    }
    check_internal(found >= 0 && img == Q.blocks[found].idempotent,
                   "tau image is not a single block idempotent of the quotient");
    return {found, Q.invariants[found].loewy.length};
}

/// Builds the local structure for the p-element class `x_class`.
inline std::unique_ptr<LocalStructure> build_local_structure(const Group& g, const GroupBlockData& parent,
                                                             int x_class, uint64_t seed,
                                                             int class_cap = kDefaultClassCap) {
    auto ls = std::make_unique<LocalStructure>();
    ls->x_class = x_class;
    ls->x = g.class_rep(x_class);
    ls->x_order = g.element_order(ls->x);
    Subgroup cent = centralizer(g, ls->x);
    ls->cent = subgroup_as_group(g, cent.members);
    // the Loewy chains of the centralizer blocks are never consulted, only
    // those of the quotient blocks
    ls->H = GroupBlockData::build(ls->cent.group, parent.p, *parent.f, seed, class_cap, false);
    int x_local = ls->cent.from_parent[ls->x];
    check_internal(x_local >= 0, "x missing from its own centralizer");
    ls->quo = quotient_by_central_cyclic(ls->cent.group, x_local);
    ls->Q = GroupBlockData::build(ls->quo.group, parent.p, *parent.f, seed, class_cap);
    for (int hb = 0; hb < ls->H->num_blocks(); ++hb) ls->tau.push_back(tau_bar_block(*ls, hb));
    return ls;
}

/// Blocks b_i of F C_G(x) with sigma_x(1_B) 1_{b_i} != 0; empty exactly
/// when sigma_x(1_B) = 0.
inline std::vector<int> sigma_block_targets(const GroupBlockData& parent, const LocalStructure& ls, int block) {
    CentralElement sig = brauer_sigma(parent, ls.cent, *ls.H, parent.blocks[block].idempotent);
    if (sig.is_zero()) return {};
    check_internal(ls.H->z.mul(sig, sig) == sig, "sigma of a block idempotent is neither idempotent nor zero");
    std::vector<int> targets;
    for (int hb = 0; hb < ls.H->num_blocks(); ++hb)
        if (!ls.H->z.mul(sig, ls.H->blocks[hb].idempotent).is_zero()) targets.push_back(hb);
    check_internal(!targets.empty(), "nonzero sigma image hits no block");
    return targets;
}

/// One x contributing to lambda: the blocks of the central quotient it
/// reaches and their Loewy lengths.
struct LambdaWitness {
    int x_class = 0;
    long long x_order = 1;
    std::vector<std::pair<int, int>> bar_blocks; // (quotient block index, LL)
    int lambda_x = 0;
    long long contribution = 0;
};

struct LambdaResult {
    long long lambda = 0;
    std::vector<LambdaWitness> witnesses;
};

/// Candidate central character of the induced block: mu(Chat) =
/// lambda_b(sum of C cap H) for every parent class C. Returns the unique
/// parent block whose character table matches; errors otherwise.
inline int induce_block(const GroupBlockData& parent, const SubgroupGroup& sub, const GroupBlockData& subdata,
                        int sub_block) {
    const Group& g = *parent.g;
    const FieldContext& f = *parent.f;
    std::vector<int> mu(parent.z.dim(), 0);
    for (int hc = 0; hc < subdata.z.dim(); ++hc) {
        int parent_cls = g.class_of(sub.to_parent[subdata.g->class_rep(hc)]);
        mu[parent_cls] = f.add(mu[parent_cls], subdata.chars[sub_block][hc]);
    }
    int found = -1;
    for (int b = 0; b < parent.num_blocks(); ++b) {
        if (parent.chars[b] == mu) {
            if (found >= 0)
                throw Error("block induction matched more than one block (induced block ill-defined)");
            found = b;
        }
    }
    if (found < 0) throw Error("block induction matched no block (induced block undefined)");
    return found;
}

/// Profile of one block as used by the theorem checks.
struct BlockProfile {
    int index = 0;
    int k = 0, l = 0;
    LoewySeries loewy;
    int defect_d = 0;
    Subgroup defect_group;
    PGroupType dg_type;
    int epsilon = 0; // exponent of D is p^epsilon
    bool dg_normal_in_g = false;
    std::optional<long long> inertial_e;
    std::optional<long long> lambda;
    std::vector<LambdaWitness> witnesses;
};

/// Full per-(group, prime) block analysis: parent block data plus lazily
/// built local structures, defect groups, lambda and inertial indices.
class BlockAnalyzer {
public:
    BlockAnalyzer(const Group& g, int p, const FieldContext& f, uint64_t seed = 0,
                  int class_cap = kDefaultClassCap)
        : g_(&g), p_(p), f_(&f), seed_(seed), class_cap_(class_cap) {
        data_ = GroupBlockData::build(g, p, f, seed, class_cap);
    }

    const Group& group() const { return *g_; }
    int prime() const { return p_; }
    const GroupBlockData& data() const { return *data_; }

    /// Local structure for a class of p-elements (identity class included).
    const LocalStructure& local(int x_class) const {
        auto it = locals_.find(x_class);
        if (it == locals_.end()) {
            long long ord = g_->element_order(g_->class_rep(x_class));
            long long rest = ord;
            while (rest > 1 && rest % p_ == 0) rest /= p_;
            check_internal(rest == 1, "local structure requested for a non-p-element");
            it = locals_.emplace(x_class, build_local_structure(*g_, *data_, x_class, seed_, class_cap_)).first;
        }
        return *it->second;
    }

    std::vector<int> p_element_classes() const {
        std::vector<int> out;
        for (int c = 0; c < g_->num_classes(); ++c) {
            long long ord = g_->element_order(g_->class_rep(c));
            bool ppow = true;
            while (ord > 1) {
                if (ord % p_ != 0) {
                    ppow = false;
                    break;
                }
                ord /= p_;
            }
            if (ppow) out.push_back(c);
        }
        return out;
    }

    /// lambda(B) = max over p-element classes x with sigma_x(1_B) != 0 of
    /// lambda_x * (|x| - 1), with lambda_x the maximal Loewy length of the
    /// centers of the quotient blocks reached through tau_x.
    LambdaResult lambda_of_block(int block) const {
        LambdaResult out;
        for (int c : p_element_classes()) {
            const LocalStructure& ls = local(c);
            std::vector<int> targets = sigma_block_targets(*data_, ls, block);
            if (targets.empty()) continue;
            LambdaWitness w;
            w.x_class = c;
            w.x_order = ls.x_order;
            for (int hb : targets) {
                w.bar_blocks.push_back(ls.tau[hb]);
                w.lambda_x = std::max(w.lambda_x, ls.tau[hb].second);
            }
            w.contribution = static_cast<long long>(w.lambda_x) * (ls.x_order - 1);
            out.lambda = std::max(out.lambda, w.contribution);
            out.witnesses.push_back(std::move(w));
        }
        return out;
    }

    /// e(B): the index in N_G(D) of the stabilizer of a root of B, divided
    /// by |D C_G(D)|. All roots are verified to give the same value.
    long long inertial_index(int block, const Subgroup& defect_group) const {
        const Group& g = *g_;
        Subgroup cent = centralizer_of_set(g, defect_group.members);
        Subgroup h = product_subgroup(g, defect_group, cent);
        SubgroupGroup sub = subgroup_as_group(g, h.members);
        auto subdata = GroupBlockData::build(sub.group, p_, *f_, seed_, class_cap_, false);
        std::vector<int> roots;
        for (int hb = 0; hb < subdata->num_blocks(); ++hb) {
            DefectResult dr = defect_and_group(*subdata, hb);
            std::vector<int> dg_parent;
            for (int m : dr.group.members) dg_parent.push_back(sub.to_parent[m]);
            std::sort(dg_parent.begin(), dg_parent.end());
            if (dg_parent != defect_group.members) continue;
            if (induce_block(*data_, sub, *subdata, hb) == block) roots.push_back(hb);
        }
        if (roots.empty()) throw Error("no root found in D*C_G(D) for block " + std::to_string(block));
        Subgroup norm = normalizer(g, defect_group);
        auto stab_size = [&](int root) {
            const auto& idem = subdata->blocks[root].idempotent;
            long long count = 0;
            for (int n : norm.members) {
                // coordinates of the conjugated idempotent
                std::vector<int> conj_coords(subdata->z.dim(), 0);
                for (int hc = 0; hc < subdata->z.dim(); ++hc) {
                    int rep_parent = sub.to_parent[subdata->g->class_rep(hc)];
                    int conj_parent = g.conjugate(rep_parent, n);
                    int conj_local = sub.from_parent[conj_parent];
                    check_internal(conj_local >= 0, "normalizer of D does not normalize D*C_G(D)");
                    conj_coords[subdata->g->class_of(conj_local)] = idem.coords[hc];
                }
                if (conj_coords == idem.coords) ++count;
            }
            return count;
        };
        long long e = -1;
        for (int root : roots) {
            long long stab = stab_size(root);
            check_internal(stab % h.order() == 0, "root stabilizer size not divisible by |D C_G(D)|");
            long long e_root = stab / h.order();
            if (e < 0) e = e_root;
            check_internal(e == e_root, "roots disagree on the inertial index");
        }
        return e;
    }

    /// Assembles the complete profile of one block.
    BlockProfile profile(int block) const {
        BlockProfile bp;
        bp.index = block;
        bp.k = data_->invariants[block].k;
        bp.l = data_->invariants[block].l;
        bp.loewy = data_->invariants[block].loewy;
        DefectResult dr = defect_and_group(*data_, block);
        bp.defect_d = dr.d;
        bp.defect_group = dr.group;
        bp.dg_type = p_group_type(bp.defect_group, p_);
        bp.epsilon = bp.dg_type.log_exponent(p_);
        bp.dg_normal_in_g = is_normal(*g_, bp.defect_group);
        LambdaResult lr = lambda_of_block(block);
        bp.lambda = lr.lambda;
        bp.witnesses = std::move(lr.witnesses);
        try {
            bp.inertial_e = inertial_index(block, bp.defect_group);
        } catch (const InternalError&) {
            throw;
        } catch (const SplittingError&) {
            throw;
        } catch (const Error&) {
            bp.inertial_e = std::nullopt;
        }
        return bp;
    }

private:
    const Group* g_;
    int p_;
    const FieldContext* f_;
    uint64_t seed_;
    int class_cap_ = kDefaultClassCap;
    std::unique_ptr<GroupBlockData> data_;
    mutable std::map<int, std::unique_ptr<LocalStructure>> locals_;
};

} // namespace zblock
