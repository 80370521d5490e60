#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "zblock/center.hpp"

using namespace zblock;

namespace {

Group make(const std::string& tag) { return Group::generate(builtin_spec(tag)); }

FieldContext splitting_field(const Group& g, int p) { return make_field(p, splitting_degree(g, p)); }

} // namespace

TEST(SplittingDegree, Arithmetic) {
    EXPECT_EQ(splitting_degree(make("symmetric 3"), 3), 1);
    EXPECT_EQ(splitting_degree(make("alternating 4"), 2), 2);
    EXPECT_EQ(splitting_degree(make("alternating 5"), 2), 4);
    EXPECT_EQ(splitting_degree(make("cyclic 16"), 2), 1);
    EXPECT_EQ(splitting_degree(make("symmetric 5"), 5), 2);
}

TEST(BuildCenter, AbelianIsGroupAlgebra) {
    Group c6 = make("cyclic 6");
    FieldContext f = splitting_field(c6, 2);
    CenterAlgebra z = CenterAlgebra::build(c6, f);
    EXPECT_EQ(z.dim(), 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) {
                int expect = (c6.mult(c6.class_rep(i), c6.class_rep(j)) == c6.class_rep(k)) ? 1 : 0;
                EXPECT_EQ(z.sc_count(i, j, k), expect);
            }
}

TEST(BuildCenter, IdentityClassIsUnit) {
    Group s4 = make("symmetric 4");
    FieldContext f = splitting_field(s4, 2);
    CenterAlgebra z = CenterAlgebra::build(s4, f);
    for (int j = 0; j < z.dim(); ++j)
        for (int k = 0; k < z.dim(); ++k) EXPECT_EQ(z.sc_count(0, j, k), j == k ? 1 : 0);
    for (int j = 0; j < z.dim(); ++j) EXPECT_EQ(z.mul(z.unit(), z.class_sum(j)), z.class_sum(j));
}

TEST(BuildCenter, TranspositionSquareInS3Char3) {
    Group s3 = make("symmetric 3");
    FieldContext f = splitting_field(s3, 3);
    CenterAlgebra z = CenterAlgebra::build(s3, f);
    int tclass = -1;
    for (int c = 0; c < 3; ++c)
        if (s3.element_order(s3.class_rep(c)) == 2) tclass = c;
    // (sum of transpositions)^2 = 3*1 + 3*(3-cycles) = 0 over GF(3)
    EXPECT_TRUE(z.mul(z.class_sum(tclass), z.class_sum(tclass)).is_zero());
}

TEST(BuildCenter, StructureConstantsMatchGroupAlgebraOracle) {
    for (auto& tag : {"symmetric 3", "symmetric 4", "alternating 4", "dihedral 8", "cyclic 12"}) {
        SCOPED_TRACE(tag);
        Group g = make(tag);
        auto oracle_constants = oracle::structure_constants(g);
        FieldContext f = splitting_field(g, 2);
        CenterAlgebra z = CenterAlgebra::build(g, f);
        for (int i = 0; i < z.dim(); ++i)
            for (int j = 0; j < z.dim(); ++j)
                for (int k = 0; k < z.dim(); ++k) EXPECT_EQ(z.sc_count(i, j, k), oracle_constants[i][j][k]);
    }
}

TEST(BuildCenter, CommutativeAndAssociative) {
    std::mt19937_64 rng(31337);
    for (auto& tag : {"symmetric 3", "alternating 4", "dihedral 10", "symmetric 5"}) {
        SCOPED_TRACE(tag);
        Group g = make(tag);
        FieldContext f = splitting_field(g, 2);
        CenterAlgebra z = CenterAlgebra::build(g, f);
        for (int i = 0; i < z.dim(); ++i)
            for (int j = 0; j < z.dim(); ++j)
                for (int k = 0; k < z.dim(); ++k) EXPECT_EQ(z.sc_count(i, j, k), z.sc_count(j, i, k));
        if (z.dim() <= 12) {
            // associativity, exhaustively on the basis
            for (int i = 0; i < z.dim(); ++i)
                for (int j = 0; j < z.dim(); ++j)
                    for (int k = 0; k < z.dim(); ++k) {
                        auto lhs = z.mul(z.mul(z.class_sum(i), z.class_sum(j)), z.class_sum(k));
                        auto rhs = z.mul(z.class_sum(i), z.mul(z.class_sum(j), z.class_sum(k)));
                        ASSERT_EQ(lhs, rhs);
                    }
        } else {
            std::uniform_int_distribution<int> dist(0, static_cast<int>(f.q()) - 1);
            for (int trial = 0; trial < 10; ++trial) {
                auto rand_elt = [&] {
                    std::vector<int> c(z.dim());
                    for (auto& v : c) v = dist(rng);
                    return z.element(std::move(c));
                };
                auto a = rand_elt(), b = rand_elt(), c = rand_elt();
                EXPECT_EQ(z.mul(z.mul(a, b), c), z.mul(a, z.mul(b, c)));
                EXPECT_EQ(z.mul(a, b), z.mul(b, a));
            }
        }
    }
}

TEST(Nilradical, SemisimpleWhenPDoesNotDivide) {
    Group c3 = make("cyclic 3");
    FieldContext f = make_field(2, splitting_degree(c3, 2));
    CenterAlgebra z = CenterAlgebra::build(c3, f);
    EXPECT_EQ(nilradical(z).dim(), 0);
}

TEST(Nilradical, AugmentationIdealOfFCp) {
    for (int p : {2, 3, 5}) {
        Group cp = make("cyclic " + std::to_string(p));
        FieldContext f = make_field(p, 1);
        CenterAlgebra z = CenterAlgebra::build(cp, f);
        EXPECT_EQ(nilradical(z).dim(), p - 1);
    }
}

TEST(Nilradical, MatchesExhaustiveNilpotentScan) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 3", 3}, Case{"symmetric 3", 2}, Case{"alternating 4", 2},
                          Case{"dihedral 8", 2}, Case{"cyclic 9", 3}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        CenterAlgebra z = CenterAlgebra::build(g, f);
        Subspace j = nilradical(z);
        oracle::CenterOracle co(g, f);
        ASSERT_LE(co.enumeration_size(), 1 << 20);
        auto nilpotents = co.all_nilpotents();
        // every scanned nilpotent is in J and vice versa
        EXPECT_EQ(nilpotents.size(), static_cast<size_t>(detail::power_of(f.q(), j.dim())));
        for (auto& x : nilpotents) EXPECT_TRUE(j.contains(x));
    }
    // the S3 mod 3 example: dim J = 2
    Group s3 = make("symmetric 3");
    FieldContext f3 = splitting_field(s3, 3);
    CenterAlgebra z3 = CenterAlgebra::build(s3, f3);
    EXPECT_EQ(nilradical(z3).dim(), 2);
}

TEST(LoewySeries, Examples) {
    // F C4 at p=2: chain [4,3,2,1,0], LL 4
    {
        Group c4 = make("cyclic 4");
        FieldContext f = make_field(2, 1);
        CenterAlgebra z = CenterAlgebra::build(c4, f);
        LoewySeries s = loewy_series(z, nilradical(z));
        EXPECT_EQ(s.dims, (std::vector<int>{4, 3, 2, 1, 0}));
        EXPECT_EQ(s.length, 4);
    }
    // F(C2xC2) at p=2: chain [4,3,1,0], LL 3 = 2 + 2 - 1
    {
        Group k4 = make("direct_product cyclic 2; cyclic 2");
        FieldContext f = make_field(2, 1);
        CenterAlgebra z = CenterAlgebra::build(k4, f);
        LoewySeries s = loewy_series(z, nilradical(z));
        EXPECT_EQ(s.dims, (std::vector<int>{4, 3, 1, 0}));
        EXPECT_EQ(s.length, 3);
    }
    // semisimple: LL 1
    {
        Group c3 = make("cyclic 3");
        FieldContext f = make_field(2, splitting_degree(c3, 2));
        CenterAlgebra z = CenterAlgebra::build(c3, f);
        LoewySeries s = loewy_series(z, nilradical(z));
        EXPECT_EQ(s.length, 1);
    }
    // a non-ideal subspace is rejected
    {
        Group c4 = make("cyclic 4");
        FieldContext f = make_field(2, 1);
        CenterAlgebra z = CenterAlgebra::build(c4, f);
        Matrix rows(f, 1, 4);
        rows.set(0, 1, 1); // span{Chat_1} is not an ideal of F C4
        EXPECT_THROW(loewy_series(z, Subspace::from_rows(rows)), Error);
    }
}

TEST(BlockIdempotents, MatchExhaustiveSearch) {
    struct Case {
        const char* tag;
        int p;
        int expected_blocks;
    };
    for (auto [tag, p, expected] : {Case{"symmetric 3", 2, 2}, Case{"alternating 4", 2, 1},
                                    Case{"symmetric 3", 3, 1}, Case{"dihedral 10", 2, 3}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        CenterAlgebra z = CenterAlgebra::build(g, f);
        auto blocks = block_idempotents(z);
        EXPECT_EQ(static_cast<int>(blocks.size()), expected);
        oracle::CenterOracle co(g, f);
        ASSERT_LE(co.enumeration_size(), 1 << 20);
        auto idems = co.all_idempotents();
        // every idempotent of a commutative algebra is a subset-sum of the
        // primitive ones: 2^blocks in total
        EXPECT_EQ(idems.size(), static_cast<size_t>(1) << blocks.size());
        for (auto& b : blocks) EXPECT_TRUE(idems.count(b.idempotent.coords));
        // primitives are the minimal nonzero idempotents: check each block
        // idempotent really appears in the scan and sums stay inside it
        std::vector<int> sum(z.dim(), 0);
        CentralElement total = z.zero();
        for (auto& b : blocks) total = z.add(total, b.idempotent);
        EXPECT_EQ(total, z.unit());
    }
}

TEST(BlockIdempotents, SemisimpleAbelianSplitsCompletely) {
    Group c3 = make("cyclic 3");
    FieldContext f = make_field(2, splitting_degree(c3, 2)); // GF(4), p does not divide |G|
    CenterAlgebra z = CenterAlgebra::build(c3, f);
    EXPECT_EQ(block_idempotents(z).size(), 3u);
}

TEST(BlockIdempotents, SeedIndependence) {
    Group a5 = make("alternating 5");
    FieldContext f = splitting_field(a5, 2);
    CenterAlgebra z = CenterAlgebra::build(a5, f);
    auto b0 = block_idempotents(z, 0);
    auto b1 = block_idempotents(z, 987654321);
    ASSERT_EQ(b0.size(), b1.size());
    for (size_t i = 0; i < b0.size(); ++i) EXPECT_EQ(b0[i].idempotent, b1[i].idempotent);
}

TEST(BlockIdempotents, NonSplittingFieldIsRefused) {
    // F2 C3 = F2 x F4: the quadratic character pair cannot be separated
    // over GF(2), and the failure must surface rather than silently
    // coarsen the decomposition
    {
        Group c3 = make("cyclic 3");
        FieldContext f = make_field(2, 1);
        CenterAlgebra z = CenterAlgebra::build(c3, f);
        EXPECT_THROW(block_idempotents(z), SplittingError);
    }
    {
        Group c7 = make("cyclic 7");
        FieldContext f = make_field(2, 1); // needs GF(8)
        CenterAlgebra z = CenterAlgebra::build(c7, f);
        EXPECT_THROW(block_idempotents(z), SplittingError);
    }
}

TEST(SectionSums, Examples) {
    // p does not divide |G|: sections are single classes
    {
        Group c3 = make("cyclic 3");
        FieldContext f = make_field(2, splitting_degree(c3, 2));
        CenterAlgebra z = CenterAlgebra::build(c3, f);
        auto sums = section_sums(z, 2);
        ASSERT_EQ(sums.size(), 3u);
        for (int y = 0; y < 3; ++y) EXPECT_EQ(sums[y], z.class_sum(y));
    }
    // C4 at p=2: a single section covering everything
    {
        Group c4 = make("cyclic 4");
        FieldContext f = make_field(2, 1);
        CenterAlgebra z = CenterAlgebra::build(c4, f);
        auto sums = section_sums(z, 2);
        ASSERT_EQ(sums.size(), 1u);
        EXPECT_EQ(sums[0].coords, (std::vector<int>{1, 1, 1, 1}));
    }
    // S3 at p=2: S_1 = 1 + transpositions, S_{(123)} = 3-cycles
    {
        Group s3 = make("symmetric 3");
        FieldContext f = splitting_field(s3, 2);
        CenterAlgebra z = CenterAlgebra::build(s3, f);
        auto sums = section_sums(z, 2);
        ASSERT_EQ(sums.size(), 2u);
        // independent tally: enumerate p'-parts of all 6 elements
        std::vector<int> expect_1(3, 0), expect_3cyc(3, 0);
        int cls_3cyc = -1;
        for (int c = 0; c < 3; ++c)
            if (s3.element_order(s3.class_rep(c)) == 3) cls_3cyc = c;
        for (int c = 0; c < 3; ++c) {
            auto [xp, xpp] = p_decompose(s3, s3.class_rep(c), 2);
            (void)xp;
            if (xpp == 0) expect_1[c] = 1;
            else expect_3cyc[c] = 1;
        }
        EXPECT_EQ(sums[0].coords, expect_1);
        EXPECT_EQ(sums[1].coords, expect_3cyc);
        EXPECT_EQ(sums[1].coords[cls_3cyc], 1);
    }
}

TEST(SectionSums, AnnihilatedByRadical) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 4", 2}, Case{"symmetric 4", 3}, Case{"alternating 5", 2},
                          Case{"cyclic 12", 2}, Case{"dihedral 14", 7}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        CenterAlgebra z = CenterAlgebra::build(g, f);
        Subspace j = nilradical(z);
        for (auto& s : section_sums(z, p))
            for (int i = 0; i < j.dim(); ++i)
                EXPECT_TRUE(z.mul(z.element(j.basis().row(i)), s).is_zero());
    }
}

TEST(CentralCharacter, Examples) {
    Group s3 = make("symmetric 3");
    FieldContext f = splitting_field(s3, 2);
    CenterAlgebra z = CenterAlgebra::build(s3, f);
    auto blocks = block_idempotents(z);
    ASSERT_EQ(blocks.size(), 2u);
    int tclass = -1, cclass = -1;
    for (int c = 0; c < 3; ++c) {
        if (s3.element_order(s3.class_rep(c)) == 2) tclass = c;
        if (s3.element_order(s3.class_rep(c)) == 3) cclass = c;
    }
    // identify the principal block by its augmentation character
    int principal = -1, other = -1;
    for (size_t b = 0; b < blocks.size(); ++b) {
        bool augment = true;
        for (int c = 0; c < 3; ++c)
            if (central_character(z, blocks[b], c) != f.from_int(s3.class_size(c))) augment = false;
        if (augment) principal = static_cast<int>(b);
        else other = static_cast<int>(b);
    }
    ASSERT_GE(principal, 0);
    ASSERT_GE(other, 0);
    for (size_t b = 0; b < blocks.size(); ++b) EXPECT_EQ(central_character(z, blocks[b], 0), 1);
    // defect-zero block: 1_B is the 3-cycle class sum, so the transposition
    // class sum acts by 0 (|C| chi(t) / chi(1) = 3*0/2) and the 3-cycle
    // class sum acts by 1 (2*(-1)/2 = -1 = 1 over GF(4))
    EXPECT_EQ(central_character(z, blocks[other], tclass), 0);
    EXPECT_EQ(central_character(z, blocks[other], cclass), 1);
    EXPECT_EQ(z.mul(z.class_sum(cclass), blocks[other].idempotent), blocks[other].idempotent);
    EXPECT_TRUE(z.mul(z.class_sum(tclass), blocks[other].idempotent).is_zero());
}

TEST(BlockInvariants, Examples) {
    // A4 at p=2: unique block with (k, l, LL) = (4, 3, 2)
    {
        Group a4 = make("alternating 4");
        FieldContext f = splitting_field(a4, 2);
        CenterAlgebra z = CenterAlgebra::build(a4, f);
        auto blocks = block_idempotents(z);
        ASSERT_EQ(blocks.size(), 1u);
        auto sections = section_sums(z, 2);
        BlockInvariants inv = block_invariants(z, blocks[0], sections);
        EXPECT_EQ(inv.k, 4);
        EXPECT_EQ(inv.l, 3);
        EXPECT_EQ(inv.loewy.length, 2);
    }
    // S3 at p=3: unique block with (3, 2, 2)
    {
        Group s3 = make("symmetric 3");
        FieldContext f = splitting_field(s3, 3);
        CenterAlgebra z = CenterAlgebra::build(s3, f);
        auto blocks = block_idempotents(z);
        ASSERT_EQ(blocks.size(), 1u);
        auto sections = section_sums(z, 3);
        BlockInvariants inv = block_invariants(z, blocks[0], sections);
        EXPECT_EQ(inv.k, 3);
        EXPECT_EQ(inv.l, 2);
        EXPECT_EQ(inv.loewy.length, 2);
    }
    // defect zero block of S3 at p=2: (1, 1, 1)
    {
        Group s3 = make("symmetric 3");
        FieldContext f = splitting_field(s3, 2);
        CenterAlgebra z = CenterAlgebra::build(s3, f);
        auto blocks = block_idempotents(z);
        auto sections = section_sums(z, 2);
        bool found_defect_zero = false;
        for (auto& b : blocks) {
            BlockInvariants inv = block_invariants(z, b, sections);
            if (inv.k == 1) {
                EXPECT_EQ(inv.l, 1);
                EXPECT_EQ(inv.loewy.length, 1);
                found_defect_zero = true;
            }
        }
        EXPECT_TRUE(found_defect_zero);
    }
}

TEST(BlockIdempotents, SupportedOnPRegularClasses) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 4", 2}, Case{"symmetric 5", 3}, Case{"alternating 5", 2},
                          Case{"dihedral 14", 7}, Case{"cyclic 12", 2}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        CenterAlgebra z = CenterAlgebra::build(g, f);
        for (auto& b : block_idempotents(z))
            for (int c = 0; c < z.dim(); ++c)
                if (b.idempotent.coords[c] != 0) {
                    EXPECT_NE(g.element_order(g.class_rep(c)) % p, 0);
                }
    }
}

TEST(BlockInvariants, SumRules) {
    struct Case {
        const char* tag;
        int p;
    };
    for (auto [tag, p] : {Case{"symmetric 4", 2}, Case{"symmetric 4", 3}, Case{"alternating 5", 5},
                          Case{"cyclic 12", 3}, Case{"dihedral 10", 2}}) {
        SCOPED_TRACE(std::string(tag) + " p=" + std::to_string(p));
        Group g = make(tag);
        FieldContext f = splitting_field(g, p);
        CenterAlgebra z = CenterAlgebra::build(g, f);
        Subspace j = nilradical(z);
        auto blocks = block_idempotents(z);
        auto sections = section_sums(z, p);
        int sum_k = 0, sum_l = 0, max_ll = 0;
        for (auto& b : blocks) {
            BlockInvariants inv = block_invariants(z, j, b, sections);
            sum_k += inv.k;
            sum_l += inv.l;
            max_ll = std::max(max_ll, inv.loewy.length);
            // chain dims strictly decrease down to the trailing zero
            ASSERT_GE(inv.loewy.dims.size(), 2u);
            EXPECT_EQ(inv.loewy.dims.front(), inv.k);
            EXPECT_EQ(inv.loewy.dims.back(), 0);
            for (size_t i = 1; i + 1 < inv.loewy.dims.size(); ++i)
                EXPECT_GT(inv.loewy.dims[i], inv.loewy.dims[i + 1]);
        }
        EXPECT_EQ(sum_k, g.num_classes());
        EXPECT_EQ(sum_l, static_cast<int>(sections.size()));
        EXPECT_EQ(max_ll, loewy_series(z, j).length);
        // prime field and splitting field agree on the whole-center LL
        FieldContext fp = make_field(p, 1);
        CenterAlgebra zp = CenterAlgebra::build(g, fp);
        EXPECT_EQ(loewy_series(zp, nilradical(zp)).length, loewy_series(z, j).length);
    }
}
