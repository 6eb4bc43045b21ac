#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "magmap/field_io.hpp"
#include "magmap/grid.hpp"
#include "oracles.hpp"

using namespace magmap;

TEST(VoxelGrid, RejectsInvalidParameters) {
    EXPECT_THROW(make_grid(1, 0.01), std::invalid_argument);
    EXPECT_THROW(make_grid(0, 0.01), std::invalid_argument);
    EXPECT_THROW(make_grid(4, 0.0), std::invalid_argument);
    EXPECT_THROW(make_grid(4, -1.0), std::invalid_argument);
}

TEST(VoxelGrid, TwoVoxelCentresAtHalfSpacing) {
    const auto g = make_grid(2, 1.0);
    EXPECT_DOUBLE_EQ(g.centre(0), -0.5);
    EXPECT_DOUBLE_EQ(g.centre(1), 0.5);
}

TEST(VoxelGrid, PaperGridSpan) {
    const auto g = make_grid(128, 0.002);
    EXPECT_NEAR(g.centre(0), -0.127, 1e-15);
    EXPECT_NEAR(g.centre(127), 0.127, 1e-15);
    EXPECT_EQ(g.voxel_count(), 128u * 128u * 128u);
    EXPECT_EQ(g.extended_n(), 256u);
}

TEST(VoxelGrid, CentresSumToZero) {
    const auto g = make_grid(8, 0.01);
    EXPECT_EQ(g.voxel_count(), 512u);
    double sx = 0, sy = 0, sz = 0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            for (std::size_t k = 0; k < 8; ++k) {
                const auto c = g.centre(i, j, k);
                sx += c[0];
                sy += c[1];
                sz += c[2];
            }
    EXPECT_NEAR(sx, 0.0, 1e-14);
    EXPECT_NEAR(sy, 0.0, 1e-14);
    EXPECT_NEAR(sz, 0.0, 1e-14);
}

TEST(VoxelGrid, ZFastestIndexing) {
    const auto g = make_grid(4, 1.0);
    EXPECT_EQ(g.index(0, 0, 1), 1u);
    EXPECT_EQ(g.index(0, 1, 0), 4u);
    EXPECT_EQ(g.index(1, 0, 0), 16u);
}

TEST(ExtendedField, EmbedConstantField) {
    const auto g = make_grid(2, 1.0);
    ScalarField f(g, std::vector<double>(8, 1.0));
    const auto e = embed_extended(f);
    ASSERT_EQ(e.values().size(), 64u);
    int ones = 0, zeros = 0;
    for (double v : e.values()) (v == 1.0 ? ones : zeros) += 1;
    EXPECT_EQ(ones, 8);
    EXPECT_EQ(zeros, 56);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(e.at(i, j, k), 1.0);
}

TEST(ExtendedField, EmbedZero) {
    const auto e = embed_extended(ScalarField(make_grid(3, 1.0)));
    for (double v : e.values()) EXPECT_EQ(v, 0.0);
}

TEST(ExtendedField, RoundTripIsBitExact) {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        const auto g = make_grid(2 + seed % 5, 0.5);
        const auto f = oracle::random_field(g, seed);
        const auto back = restrict_to_base(embed_extended(f));
        ASSERT_EQ(back.grid(), g);
        for (std::size_t i = 0; i < f.size(); ++i) ASSERT_EQ(back[i], f[i]);
    }
}

TEST(MeanError, BasicValues) {
    const auto g = make_grid(2, 1.0);
    ScalarField e(g), r(g);
    e[0] = 1.0;
    EXPECT_DOUBLE_EQ(mean_error(e, e), 0.0);
    EXPECT_DOUBLE_EQ(mean_error(e, r), 1.0);
    r[1] = 1.0;
    EXPECT_DOUBLE_EQ(mean_error(e, r), std::sqrt(2.0));
}

TEST(MeanError, RejectsZeroNormAndGridMismatch) {
    const auto g = make_grid(2, 1.0);
    EXPECT_THROW(mean_error(ScalarField(g), ScalarField(g)), std::invalid_argument);
    ScalarField a(g);
    a[0] = 1.0;
    EXPECT_THROW(mean_error(a, ScalarField(make_grid(3, 1.0))), std::invalid_argument);
}

TEST(MeanError, ScaleInvariantAndBounded) {
    const auto g = make_grid(4, 1.0);
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        const auto e = oracle::random_field(g, 2 * seed);
        const auto r = oracle::random_field(g, 2 * seed + 1);
        const double alpha = (seed % 2 ? -1.0 : 1.0) * (0.1 + seed);
        ScalarField ea(g), ra(g);
        for (std::size_t i = 0; i < e.size(); ++i) {
            ea[i] = alpha * e[i];
            ra[i] = alpha * r[i];
        }
        const double err = mean_error(e, r);
        EXPECT_NEAR(mean_error(ea, ra), err, 1e-13 * err);
        EXPECT_LE(err, (norm2(e.values()) + norm2(r.values())) / norm2(e.values()) + 1e-14);
    }
}

TEST(FieldIo, BinaryRoundTripAndHeader) {
    const auto g = make_grid(5, 0.003);
    const auto f = oracle::random_field(g, 7);
    const auto path = std::filesystem::temp_directory_path() / "magmap_field_io_test.bin";
    write_field(path, f);
    EXPECT_EQ(std::filesystem::file_size(path), 16u + 8u * 125u);

    std::ifstream is(path, std::ios::binary);
    unsigned char header[16];
    is.read(reinterpret_cast<char*>(header), 16);
    EXPECT_EQ(std::string(reinterpret_cast<char*>(header), 4), "MGF1");
    EXPECT_EQ(header[4], 5);
    EXPECT_EQ(header[5] | header[6] | header[7], 0);

    const auto back = read_field(path);
    EXPECT_EQ(back.grid(), g);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(back[i], f[i]);
    std::filesystem::remove(path);
}

TEST(FieldIo, RejectsBadMagic) {
    const auto path = std::filesystem::temp_directory_path() / "magmap_bad_magic.bin";
    {
        std::ofstream os(path, std::ios::binary);
        os << "XXXXXXXXXXXXXXXXXXXX";
    }
    EXPECT_THROW(read_field(path), std::runtime_error);
    std::filesystem::remove(path);
}
