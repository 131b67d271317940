#include <doctest.h>

#include <random>
#include <stdexcept>

#include "regen/codes.hpp"
#include "regen/gf256.hpp"
#include "regen/harness.hpp"
#include "regen/lift.hpp"

using namespace regen;

namespace {

// (x1..x4, y1..y4) with distinguishable byte values.
std::vector<std::uint8_t> example_file() {
    return {0x11, 0x12, 0x13, 0x14, 0x21, 0x22, 0x23, 0x24};
}

} // namespace

TEST_CASE("cyclic layout leaves position j idle in subsystem j") {
    SubsystemLayout layout(LiftVariant::cyclic, 3);
    CHECK(layout.subsystems() == 4);
    CHECK(layout.positions() == 4);
    // Subsystem j leaves position j idle; below it base nodes keep their
    // index, above it they shift down by one.
    CHECK(layout.at(1, 1) == 0);
    CHECK(layout.at(1, 2) == 1);
    CHECK(layout.at(1, 3) == 2);
    CHECK(layout.at(1, 4) == 3);
    CHECK(layout.at(3, 1) == 1);
    CHECK(layout.at(3, 2) == 2);
    CHECK(layout.at(3, 3) == 0);
    CHECK(layout.at(3, 4) == 3);
    for (int p = 1; p <= 4; ++p) CHECK(layout.occupancy(p) == 3);
}

TEST_CASE("permutation layout cardinalities") {
    SubsystemLayout layout(LiftVariant::permutation, 3);
    CHECK(layout.subsystems() == 24);
    for (int p = 1; p <= 4; ++p) {
        int empty = 0;
        for (int i = 1; i <= 24; ++i) empty += layout.at(i, p) == 0;
        CHECK(empty == 6); // n! of (n+1)!
        CHECK(layout.occupancy(p) == 18);
    }
    // Every subsystem has exactly one idle position and is a permutation of
    // the base nodes elsewhere.
    for (int i = 1; i <= 24; ++i) {
        std::vector<int> seen(4, 0);
        int empty = 0;
        for (int p = 1; p <= 4; ++p) {
            int b = layout.at(i, p);
            if (b == 0) {
                ++empty;
            } else {
                ++seen[static_cast<std::size_t>(b)];
            }
        }
        CHECK(empty == 1);
        for (int b = 1; b <= 3; ++b) CHECK(seen[static_cast<std::size_t>(b)] == 1);
    }
}

TEST_CASE("cyclic lift of the toy code reproduces the example") {
    auto lifted = cyclic_lift(make_toy_code());
    const auto& p = lifted->params();
    CHECK(p.n == 4);
    CHECK(p.k == 3);
    CHECK(p.d == 3);
    CHECK(p.alpha_per_node == std::vector<std::uint64_t>(4, 3)); // 3*alpha
    CHECK(p.gamma == 6);                                         // 3*gamma
    CHECK(p.file_size == 8);
    CHECK(!p.beta.is_homogeneous());

    auto inst = lifted->store(example_file());
    // w1 = (x2, x3, x4): base node 1 of subsystems 2..4.
    CHECK(inst.node(1) == std::vector<std::uint8_t>{0x12, 0x13, 0x14});
    // w2 = (x1, y3, y4).
    CHECK(inst.node(2) == std::vector<std::uint8_t>{0x11, 0x23, 0x24});
    // w4 holds the parities x_i + y_i for i = 1..3.
    CHECK(inst.node(4) == std::vector<std::uint8_t>{static_cast<std::uint8_t>(0x11 ^ 0x21),
                                                    static_cast<std::uint8_t>(0x12 ^ 0x22),
                                                    static_cast<std::uint8_t>(0x13 ^ 0x23)});

    CHECK(verify_reconstruction_all(*lifted, inst).all_pass);
    auto rep = verify_exact_repair_all(*lifted, inst);
    CHECK(rep.all_pass);
    CHECK(rep.max_bandwidth_used == 6);
}

TEST_CASE("cyclic lifted file layout round-trips through reconstruct") {
    auto lifted = cyclic_lift(make_toy_code());
    auto inst = lifted->store(example_file());
    std::vector<int> subset{1, 3, 4};
    auto view = restrict_to(inst, subset);
    CHECK(lifted->reconstruct(view, subset) == example_file());
}

TEST_CASE("permutation lift accounting for the toy code") {
    auto lifted = permutation_lift(make_toy_code());
    const auto& p = lifted->params();
    CHECK(p.n == 4);
    CHECK(p.alpha_per_node == std::vector<std::uint64_t>(4, 18)); // n*n!*alpha
    CHECK(p.gamma == 36);                                         // n*n!*gamma
    CHECK(p.file_size == 48);                                     // (n+1)!*B
    CHECK(p.beta.is_homogeneous());
    CHECK(p.beta.beta == 12);

    // Normalized rate B2/alpha2 = 48/18 = 8/3 = (4/3)*2.
    CHECK(Rational(BigInt::from_u64(p.file_size), BigInt::from_u64(p.alpha_per_node[0])) ==
          Rational(8, 3));

    auto inst = lifted->store(harness::random_file(48, 42));
    CHECK(verify_reconstruction_all(*lifted, inst).all_pass);
    auto rep = verify_exact_repair_all(*lifted, inst);
    CHECK(rep.all_pass);
    CHECK(rep.max_bandwidth_used == 36);
    CHECK(rep.per_helper_max == 12);

    // Every repair: each helper transmits exactly 12 symbols.
    for (int failed = 1; failed <= 4; ++failed) {
        auto audit = harness::bandwidth_audit(*lifted, inst, failed);
        REQUIRE(audit.entries.size() == 1);
        CHECK(audit.uniform);
        CHECK(audit.measured_beta2 == 12);
        for (const auto& [h, s] : audit.entries[0].sent) CHECK(s == 12);
        REQUIRE(audit.claimed_beta2.has_value());
        CHECK(*audit.claimed_beta2 == 18); // n*n!*beta, recorded next to the measurement
    }
}

TEST_CASE("normalized capacity gains the (n+1)/n factor under both variants") {
    for (auto variant : {LiftVariant::cyclic, LiftVariant::permutation}) {
        auto base = make_toy_code();
        auto lifted = std::make_shared<LiftedCode>(base, variant);
        const auto& bp = base->params();
        const auto& lp = lifted->params();
        Rational base_norm(BigInt::from_u64(bp.file_size), BigInt::from_u64(bp.alpha_per_node[0]));
        Rational lift_norm(BigInt::from_u64(lp.file_size), BigInt::from_u64(lp.alpha_per_node[0]));
        CHECK(lift_norm == Rational(bp.n + 1, bp.n) * base_norm);
    }
}

TEST_CASE("iterated lift composes") {
    auto base = make_toy_code();
    CHECK(iterated_lift(base, 0, LiftVariant::cyclic) == base);

    auto twice = iterated_lift(base, 2, LiftVariant::cyclic);
    const auto& p = twice->params();
    CHECK(p.n == 5);
    CHECK(p.k == 4);
    CHECK(p.d == 4);
    CHECK(p.alpha_per_node == std::vector<std::uint64_t>(5, 12));
    CHECK(p.file_size == 40);
    CHECK(Rational(BigInt::from_u64(p.file_size), BigInt::from_u64(p.alpha_per_node[0])) ==
          Rational(10, 3)); // (5/3) * 2

    auto inst = twice->store(harness::random_file(40, 7));
    CHECK(verify_reconstruction_all(*twice, inst).all_pass);
    CHECK(verify_exact_repair_all(*twice, inst).all_pass);
}

TEST_CASE("lift rejects bad inputs") {
    auto base = make_toy_code();
    auto lifted = cyclic_lift(base);
    auto inst = lifted->store(example_file());
    std::vector<int> with_failed{1, 2, 3};
    CHECK_THROWS_AS(lifted->repair(inst, 1, with_failed), std::domain_error);
    std::vector<int> short_helpers{2, 3};
    CHECK_THROWS_AS(lifted->repair(inst, 1, short_helpers), std::domain_error);
    std::vector<int> repeated{2, 2, 3};
    CHECK_THROWS_AS(lifted->repair(inst, 1, repeated), std::domain_error);
    std::vector<int> out_of_range{2, 3, 9};
    CHECK_THROWS_AS(lifted->reconstruct(inst, out_of_range), std::domain_error);
    CHECK_THROWS_AS(lifted->store(std::vector<std::uint8_t>(7, 0)), std::domain_error);
    auto big = std::make_shared<MdsMsrCode>(6, 2);
    CHECK_THROWS_AS(permutation_lift(big), std::length_error);
}

TEST_CASE("layout digests pin the construction") {
    auto a = std::dynamic_pointer_cast<const LiftedCode>(cyclic_lift(make_toy_code()));
    auto b = std::dynamic_pointer_cast<const LiftedCode>(cyclic_lift(make_toy_code()));
    auto c = std::dynamic_pointer_cast<const LiftedCode>(permutation_lift(make_toy_code()));
    REQUIRE(a);
    REQUIRE(b);
    REQUIRE(c);
    CHECK(a->layout_digest() == b->layout_digest());
    CHECK(a->layout_digest() != c->layout_digest());
}

TEST_CASE("instance summary json") {
    auto lifted = cyclic_lift(make_toy_code());
    auto inst = lifted->store(example_file());
    auto j = instance_json(*lifted, inst);
    CHECK(j.contains("params"));
    CHECK(j.contains("chain"));
    CHECK(j.contains("node_symbols"));
    CHECK(j.contains("layout_digest"));
    CHECK(j["chain"]["type"].get<std::string>() == "cyclic");
    CHECK(j["chain"]["base"]["type"].get<std::string>() == "msr");
    CHECK(j["node_symbols"].get<std::vector<std::uint64_t>>() ==
          std::vector<std::uint64_t>(4, 3));
}

TEST_CASE("stored instances are identical under scalar and simd kernels") {
    namespace gf = regen::gf256;
    if (!gf::backend_available(gf::Backend::avx2)) return;
    struct Guard {
        gf::Backend saved = gf::active_backend();
        ~Guard() { gf::set_backend(saved); }
    } guard;
    auto code = permutation_lift(std::make_shared<MdsMsrCode>(5, 2));
    auto file = harness::random_file(code->params().file_size, 13);
    REQUIRE(gf::set_backend(gf::Backend::scalar));
    auto scalar_inst = code->store(file);
    REQUIRE(gf::set_backend(gf::Backend::avx2));
    auto simd_inst = code->store(file);
    CHECK(scalar_inst.nodes_ == simd_inst.nodes_);
    auto tr_scalar = [&] {
        gf::set_backend(gf::Backend::scalar);
        std::vector<int> helpers{2, 4, 6};
        return code->repair(simd_inst, 1, helpers);
    }();
    auto tr_simd = [&] {
        gf::set_backend(gf::Backend::avx2);
        std::vector<int> helpers{2, 4, 6};
        return code->repair(simd_inst, 1, helpers);
    }();
    CHECK(tr_scalar.rebuilt == tr_simd.rebuilt);
    CHECK(tr_scalar.sent == tr_simd.sent);
}

TEST_CASE("random base and chain combinations verify fully") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 6; ++iter) {
        int n = 2 + static_cast<int>(rng() % 3); // 2..4
        int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
        std::shared_ptr<const Code> code;
        if (rng() & 1) {
            code = std::make_shared<MdsMsrCode>(n, k);
        } else {
            code = std::make_shared<RbtMbrCode>(n, k);
        }
        int lifts = 1 + static_cast<int>(rng() % 2);
        for (int l = 0; l < lifts; ++l) {
            bool can_perm = code->params().n <= 3;
            LiftVariant v = (can_perm && (rng() & 1)) ? LiftVariant::permutation
                                                      : LiftVariant::cyclic;
            code = std::make_shared<LiftedCode>(code, v);
        }
        auto inst = code->store(harness::random_file(code->params().file_size, rng()));
        CHECK(verify_reconstruction_all(*code, inst).all_pass);
        CHECK(verify_exact_repair_all(*code, inst).all_pass);
    }
}

TEST_CASE("cyclic lift of an MBR base") {
    auto lifted = cyclic_lift(std::make_shared<RbtMbrCode>(4, 2));
    const auto& p = lifted->params();
    CHECK(p.n == 5);
    CHECK(p.k == 3);
    CHECK(p.d == 4);
    CHECK(p.gamma == 4 * 3); // n * gamma_base
    auto inst = lifted->store(harness::random_file(p.file_size, 11));
    CHECK(verify_reconstruction_all(*lifted, inst).all_pass);
    CHECK(verify_exact_repair_all(*lifted, inst).all_pass);
}
