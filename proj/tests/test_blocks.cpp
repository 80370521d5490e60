#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zblock/blocks.hpp"

using namespace zblock;

namespace {

Group make(const std::string& tag) { return Group::generate(builtin_spec(tag)); }

FieldContext splitting_field(const Group& g, int p) { return make_field(p, splitting_degree(g, p)); }

int class_of_order(const Group& g, long long order) {
    for (int c = 0; c < g.num_classes(); ++c)
        if (g.element_order(g.class_rep(c)) == order) return c;
    return -1;
}

} // namespace

TEST(ClassDefect, Examples) {
    Group s3 = make("symmetric 3");
    EXPECT_EQ(class_defect(s3, 0, 2), 1); // identity class: nu_2(6)
    EXPECT_EQ(class_defect(s3, class_of_order(s3, 2), 2), 1);
    EXPECT_EQ(class_defect(s3, class_of_order(s3, 3), 2), 0);

    Group a5 = make("alternating 5");
    EXPECT_EQ(class_defect(a5, 0, 2), 2);
    EXPECT_EQ(class_defect(a5, class_of_order(a5, 5), 2), 0);
}

TEST(DefectAndGroup, PrincipalBlockHasSylowDefect) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 4", 2}, Case{"symmetric 4", 3}, Case{"alternating 5", 2},
                          Case{"dihedral 10", 5}, Case{"cyclic 12", 2}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        auto data = GroupBlockData::build(g, p, f, 0);
        // principal block: augmentation character |C| mod p
        int principal = -1;
        for (int b = 0; b < data->num_blocks(); ++b) {
            bool augment = true;
            for (int c = 0; c < data->z.dim(); ++c)
                if (data->chars[b][c] != f.from_int(g.class_size(c))) augment = false;
            if (augment) principal = b;
        }
        ASSERT_GE(principal, 0);
        DefectResult dr = defect_and_group(*data, principal);
        EXPECT_EQ(dr.d, detail::p_part(g.order(), p));
        EXPECT_EQ(dr.group.order(), sylow_subgroup(g, p).order());
    }
}

TEST(DefectAndGroup, DefectZeroAndKleinFour) {
    {
        Group s3 = make("symmetric 3");
        FieldContext f = splitting_field(s3, 2);
        auto data = GroupBlockData::build(s3, 2, f, 0);
        ASSERT_EQ(data->num_blocks(), 2);
        bool saw_zero = false;
        for (int b = 0; b < 2; ++b) {
            DefectResult dr = defect_and_group(*data, b);
            if (dr.d == 0) {
                saw_zero = true;
                EXPECT_EQ(dr.group.order(), 1);
            }
        }
        EXPECT_TRUE(saw_zero);
    }
    {
        Group a4 = make("alternating 4");
        FieldContext f = splitting_field(a4, 2);
        auto data = GroupBlockData::build(a4, 2, f, 0);
        ASSERT_EQ(data->num_blocks(), 1);
        DefectResult dr = defect_and_group(*data, 0);
        EXPECT_EQ(dr.d, 2);
        PGroupType t = p_group_type(dr.group, 2);
        EXPECT_EQ(t.invariant_factors, (std::vector<long long>{2, 2}));
    }
}

TEST(DefectAndGroup, ConsistencyAcrossCatalog) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 5", 2}, Case{"symmetric 5", 3}, Case{"alternating 5", 5},
                          Case{"dihedral 14", 2}, Case{"cyclic 16", 2}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        auto data = GroupBlockData::build(g, p, f, 0);
        for (int b = 0; b < data->num_blocks(); ++b) {
            DefectResult dr = defect_and_group(*data, b);
            EXPECT_EQ(detail::p_part(dr.group.order(), p), dr.d);
            // the minimum class defect over classes with nonzero character
            // also equals d
            int min_defect = 1000;
            for (int c = 0; c < data->z.dim(); ++c)
                if (data->chars[b][c] != 0) min_defect = std::min(min_defect, class_defect(g, c, p));
            EXPECT_EQ(min_defect, dr.d);
        }
    }
}

TEST(BrauerSigma, UnitAndCentralizerIdentity) {
    Group c4 = make("cyclic 4");
    FieldContext f = make_field(2, 1);
    BlockAnalyzer an(c4, 2, f);
    int invol_class = class_of_order(c4, 2);
    const LocalStructure& ls = an.local(invol_class);
    // C_G(x) is the whole group here, so sigma is the identity up to the
    // induced class relabeling
    EXPECT_EQ(ls.cent.group.order(), 4);
    CentralElement one = brauer_sigma(an.data(), ls.cent, *ls.H, an.data().z.unit());
    EXPECT_EQ(one, ls.H->z.unit());
    for (int c = 0; c < 4; ++c) {
        CentralElement img = brauer_sigma(an.data(), ls.cent, *ls.H, an.data().z.class_sum(c));
        // the image is the class sum of the same elements in H-numbering
        int parent_rep = c4.class_rep(c);
        int local_cls = ls.H->g->class_of(ls.cent.from_parent[parent_rep]);
        EXPECT_EQ(img, ls.H->z.class_sum(local_cls));
    }
}

TEST(BrauerSigma, PartitionOfUnityAndIdempotency) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 4", 2}, Case{"alternating 4", 2}, Case{"alternating 5", 2},
                          Case{"symmetric 3", 3}, Case{"dihedral 10", 5}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        BlockAnalyzer an(g, p, f);
        for (int xc : an.p_element_classes()) {
            const LocalStructure& ls = an.local(xc);
            CentralElement sum = ls.H->z.zero();
            for (int b = 0; b < an.data().num_blocks(); ++b) {
                CentralElement sig = brauer_sigma(an.data(), ls.cent, *ls.H, an.data().blocks[b].idempotent);
                // idempotent or zero
                EXPECT_EQ(ls.H->z.mul(sig, sig), sig);
                sum = ls.H->z.add(sum, sig);
            }
            EXPECT_EQ(sum, ls.H->z.unit());
        }
    }
}

TEST(SigmaBlockTargets, DefectZeroBlocksVanish) {
    Group s3 = make("symmetric 3");
    FieldContext f = splitting_field(s3, 2);
    BlockAnalyzer an(s3, 2, f);
    int zero_block = -1;
    for (int b = 0; b < an.data().num_blocks(); ++b)
        if (defect_and_group(an.data(), b).d == 0) zero_block = b;
    ASSERT_GE(zero_block, 0);
    int invol_class = class_of_order(s3, 2);
    EXPECT_TRUE(sigma_block_targets(an.data(), an.local(invol_class), zero_block).empty());
    // central x: targets = the block itself
    const LocalStructure& id_local = an.local(0);
    auto targets = sigma_block_targets(an.data(), id_local, zero_block);
    EXPECT_EQ(targets.size(), 1u);
}

TEST(TauBarBlock, CyclicExamples) {
    // C4, x the involution: the unique block maps to the unique block of
    // F C2, whose center has LL 2
    {
        Group c4 = make("cyclic 4");
        FieldContext f = make_field(2, 1);
        BlockAnalyzer an(c4, 2, f);
        const LocalStructure& ls = an.local(class_of_order(c4, 2));
        ASSERT_EQ(ls.H->num_blocks(), 1);
        EXPECT_EQ(ls.Q->g->order(), 2);
        EXPECT_EQ(ls.tau[0].second, 2);
    }
    // x of maximal order in cyclic G: quotient is trivial, LL 1
    {
        Group c4 = make("cyclic 4");
        FieldContext f = make_field(2, 1);
        BlockAnalyzer an(c4, 2, f);
        const LocalStructure& ls = an.local(class_of_order(c4, 4));
        EXPECT_EQ(ls.Q->g->order(), 1);
        EXPECT_EQ(ls.tau[0].second, 1);
    }
    // C8: x of order 2 gives quotient C4 with LL 4
    {
        Group c8 = make("cyclic 8");
        FieldContext f = make_field(2, 1);
        BlockAnalyzer an(c8, 2, f);
        const LocalStructure& ls = an.local(class_of_order(c8, 2));
        EXPECT_EQ(ls.Q->g->order(), 4);
        EXPECT_EQ(ls.tau[0].second, 4);
    }
}

TEST(TauBarBlock, CollapseKernelIsAugmentationByX) {
    // ker tau_x = (x-1) F C_G(x): at the algebra level the collapse matrix
    // has kernel of dimension |C_G(x)| - |C_G(x)/<x>|, spanned by g - xg
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"cyclic 8", 2}, Case{"dihedral 8", 2}, Case{"alternating 4", 2},
                          Case{"symmetric 3", 3}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        BlockAnalyzer an(g, p, f);
        for (int xc : an.p_element_classes()) {
            const LocalStructure& ls = an.local(xc);
            const Group& h = ls.cent.group;
            if (h.order() > 200) continue;
            int nh = h.order(), nq = ls.Q->g->order();
            Matrix collapse(f, nq, nh);
            for (int e = 0; e < nh; ++e) collapse.set(ls.quo.map[e], e, 1);
            Subspace ker = kernel(collapse);
            EXPECT_EQ(ker.dim(), nh - nq);
            int x_local = ls.cent.from_parent[ls.x];
            std::vector<std::vector<int>> diffs;
            for (int e = 0; e < nh; ++e) {
                std::vector<int> v(nh, 0);
                v[e] = f.add(v[e], 1);
                int xe = h.mult(x_local, e);
                v[xe] = f.sub(v[xe], 1);
                if (e != xe) diffs.push_back(v);
                EXPECT_TRUE(ker.contains(v));
            }
            if (!diffs.empty()) {
                EXPECT_EQ(Subspace::from_rows(Matrix::from_rows(f, diffs)).dim(), nh - nq);
            }
        }
    }
}

TEST(Lambda, Examples) {
    // C4 at p=2: x of order 2 contributes 2*(2-1) = 2, x of order 4
    // contributes 1*(4-1) = 3, so lambda = 3
    {
        Group c4 = make("cyclic 4");
        FieldContext f = make_field(2, 1);
        BlockAnalyzer an(c4, 2, f);
        LambdaResult lr = an.lambda_of_block(0);
        EXPECT_EQ(lr.lambda, 3);
        bool saw2 = false, saw3 = false;
        for (auto& w : lr.witnesses) {
            if (w.x_order == 2) {
                EXPECT_EQ(w.lambda_x, 2);
                EXPECT_EQ(w.contribution, 2);
                saw2 = true;
            }
            if (w.x_order == 4) {
                EXPECT_EQ(w.lambda_x, 1);
                EXPECT_EQ(w.contribution, 3);
                saw3 = true;
            }
        }
        EXPECT_TRUE(saw2 && saw3);
    }
    // C2 x C2: every involution gives quotient C2 and contribution 2
    {
        Group k4 = make("direct_product cyclic 2; cyclic 2");
        FieldContext f = make_field(2, 1);
        BlockAnalyzer an(k4, 2, f);
        LambdaResult lr = an.lambda_of_block(0);
        EXPECT_EQ(lr.lambda, 2);
        for (auto& w : lr.witnesses)
            if (w.x_order == 2) {
                EXPECT_EQ(w.lambda_x, 2);
                EXPECT_EQ(w.contribution, 2);
            }
    }
    // defect zero: lambda = 0
    {
        Group s3 = make("symmetric 3");
        FieldContext f = splitting_field(s3, 2);
        BlockAnalyzer an(s3, 2, f);
        for (int b = 0; b < an.data().num_blocks(); ++b)
            if (defect_and_group(an.data(), b).d == 0) {
                EXPECT_EQ(an.lambda_of_block(b).lambda, 0);
            }
    }
}

TEST(Lambda, Step1AndStep2Bounds) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 4", 2}, Case{"symmetric 5", 2}, Case{"alternating 5", 2},
                          Case{"dihedral 8", 2}, Case{"direct_product cyclic 2; cyclic 2; cyclic 2", 2}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        BlockAnalyzer an(g, p, f);
        for (int b = 0; b < an.data().num_blocks(); ++b) {
            long long lambda = an.lambda_of_block(b).lambda;
            DefectResult dr = defect_and_group(an.data(), b);
            PGroupType t = p_group_type(dr.group, p);
            long long ll = an.data().invariants[b].loewy.length;
            long long bound = detail::power_of(p, dr.d) - detail::power_of(p, dr.d - t.log_exponent(p)) + 1;
            EXPECT_LE(ll, lambda + 1);
            EXPECT_LE(lambda + 1, bound);
        }
    }
}

TEST(InduceBlock, WholeGroupIsIdentity) {
    Group s3 = make("symmetric 3");
    FieldContext f = splitting_field(s3, 2);
    BlockAnalyzer an(s3, 2, f);
    SubgroupGroup sub = subgroup_as_group(s3, whole_group(s3).members);
    auto subdata = GroupBlockData::build(sub.group, 2, f, 0);
    ASSERT_EQ(subdata->num_blocks(), an.data().num_blocks());
    std::set<int> images;
    for (int b = 0; b < subdata->num_blocks(); ++b) {
        int induced = induce_block(an.data(), sub, *subdata, b);
        images.insert(induced);
        // the induced block has the same character values through the
        // class correspondence
        for (int hc = 0; hc < subdata->z.dim(); ++hc) {
            int parent_cls = s3.class_of(sub.to_parent[subdata->g->class_rep(hc)]);
            EXPECT_EQ(subdata->chars[b][hc], an.data().chars[induced][parent_cls]);
        }
    }
    EXPECT_EQ(images.size(), static_cast<size_t>(an.data().num_blocks()));
}

TEST(InduceBlock, FromSylowNormalizerExamples) {
    // A4 at p=3: the principal block of F C3 induces to the principal
    // block of F A4
    {
        Group a4 = make("alternating 4");
        FieldContext f = splitting_field(a4, 3);
        BlockAnalyzer an(a4, 3, f);
        Subgroup syl = sylow_subgroup(a4, 3);
        SubgroupGroup sub = subgroup_as_group(a4, syl.members);
        auto subdata = GroupBlockData::build(sub.group, 3, f, 0);
        ASSERT_EQ(subdata->num_blocks(), 1);
        int induced = induce_block(an.data(), sub, *subdata, 0);
        // the target is the principal block: augmentation character
        for (int c = 0; c < an.data().z.dim(); ++c)
            EXPECT_EQ(an.data().chars[induced][c], f.from_int(a4.class_size(c)));
    }
    // S3 at p=3: F C3 has one block and S3 has one block
    {
        Group s3 = make("symmetric 3");
        FieldContext f = splitting_field(s3, 3);
        BlockAnalyzer an(s3, 3, f);
        Subgroup syl = sylow_subgroup(s3, 3);
        SubgroupGroup sub = subgroup_as_group(s3, syl.members);
        auto subdata = GroupBlockData::build(sub.group, 3, f, 0);
        ASSERT_EQ(an.data().num_blocks(), 1);
        EXPECT_EQ(induce_block(an.data(), sub, *subdata, 0), 0);
    }
}

TEST(InertialIndex, Examples) {
    struct Case {
        const char* tag;
        int p;
        long long expected_principal_e;
    };
    for (auto [tag, p, expect] : {Case{"symmetric 3", 3, 2}, Case{"alternating 4", 3, 1},
                                  Case{"alternating 4", 2, 3}, Case{"dihedral 10", 5, 2},
                                  Case{"alternating 5", 2, 3}, Case{"symmetric 5", 5, 4}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        BlockAnalyzer an(g, p, f);
        int principal = -1;
        for (int b = 0; b < an.data().num_blocks(); ++b) {
            bool augment = true;
            for (int c = 0; c < an.data().z.dim(); ++c)
                if (an.data().chars[b][c] != f.from_int(g.class_size(c))) augment = false;
            if (augment) principal = b;
        }
        ASSERT_GE(principal, 0);
        DefectResult dr = defect_and_group(an.data(), principal);
        EXPECT_EQ(an.inertial_index(principal, dr.group), expect);
    }
}

TEST(InertialIndex, DividesAutOrderForSmallRankAbelian) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"alternating 4", 2}, Case{"alternating 5", 2}, Case{"symmetric 3", 3},
                          Case{"direct_product cyclic 4; cyclic 2", 2}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        BlockAnalyzer an(g, p, f);
        for (int b = 0; b < an.data().num_blocks(); ++b) {
            BlockProfile prof = an.profile(b);
            if (!prof.dg_type.is_abelian || prof.dg_type.invariant_factors.size() != 2) continue;
            if (prof.dg_type.invariant_factors[1] == 1) continue;
            ASSERT_TRUE(prof.inertial_e.has_value());
            int m = detail::p_part(prof.dg_type.invariant_factors[0], p);
            int n = detail::p_part(prof.dg_type.invariant_factors[1], p);
            if ((p == 2 && m >= n && n >= 1) || (p == 3 && m == 1)) {
                long long aut = aut_order_rank2(p, std::max(m, n), std::min(m, n));
                EXPECT_EQ(aut % *prof.inertial_e, 0);
            }
        }
    }
}

TEST(BlockProfile, BoundsInvariants) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 4", 3}, Case{"alternating 5", 3}, Case{"cyclic 16", 2}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        BlockAnalyzer an(g, p, f);
        for (int b = 0; b < an.data().num_blocks(); ++b) {
            BlockProfile prof = an.profile(b);
            EXPECT_EQ(prof.dg_type.order, detail::power_of(p, prof.defect_d));
            EXPECT_LE(prof.epsilon, prof.defect_d);
            EXPECT_GE(prof.loewy.length, 1);
            EXPECT_LE(prof.loewy.length, detail::power_of(p, prof.defect_d));
        }
    }
}
