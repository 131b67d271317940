#include <doctest.h>

#include <stdexcept>

#include "regen/codes.hpp"
#include "regen/lift.hpp"
#include "regen/model.hpp"

using namespace regen;

TEST_CASE("params validation") {
    CodeParams p;
    p.n = 3;
    p.k = 2;
    p.d = 2;
    p.alpha_per_node = {1, 1, 1};
    p.gamma = 2;
    p.beta = BetaProfile::homogeneous(1);
    p.file_size = 2;
    CHECK_NOTHROW(p.validate());

    CodeParams bad = p;
    bad.d = 3; // d >= n
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = p;
    bad.beta = BetaProfile::homogeneous(2); // gamma != d*beta
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = p;
    bad.alpha_per_node = {1, 1};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = p;
    bad.file_size = 0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("binomial") {
    CHECK(binomial(3, 2) == 3);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(51, 25) == 247959266474052ull);
    CHECK(binomial(200, 100) == UINT64_MAX); // clamped on overflow
}

TEST_CASE("subset enumeration is lexicographic and complete") {
    auto subs = enumerate_subsets(4, 2, 0, 0);
    REQUIRE(subs.size() == 6);
    CHECK(subs.front() == std::vector<int>{1, 2});
    CHECK(subs[1] == std::vector<int>{1, 3});
    CHECK(subs.back() == std::vector<int>{3, 4});

    bool sampled = false;
    auto sampled_subs = enumerate_subsets(12, 2, 10, 42, &sampled);
    CHECK(sampled);
    CHECK(sampled_subs.size() == 10);
    for (std::size_t i = 1; i < sampled_subs.size(); ++i) {
        CHECK(sampled_subs[i - 1] < sampled_subs[i]); // distinct, ordered
    }
    auto again = enumerate_subsets(12, 2, 10, 42, &sampled);
    CHECK(sampled_subs == again); // deterministic under the seed
}

TEST_CASE("toy instance passes both exhaustive verifications") {
    auto toy = make_toy_code();
    auto inst = toy->store(std::vector<std::uint8_t>{0x05, 0x07});
    CHECK(inst.node(1) == std::vector<std::uint8_t>{0x05});
    CHECK(inst.node(2) == std::vector<std::uint8_t>{0x07});
    CHECK(inst.node(3) == std::vector<std::uint8_t>{0x02});

    auto recon = verify_reconstruction_all(*toy, inst);
    CHECK(recon.all_pass);
    CHECK(recon.reconstruction_results.size() == 3);

    auto repair = verify_exact_repair_all(*toy, inst);
    CHECK(repair.all_pass);
    CHECK(repair.repair_results.size() == 3); // one helper set per failed node
    CHECK(repair.max_bandwidth_used == 2);    // gamma = d*beta = 2
    CHECK(repair.per_helper_max == 1);

    auto merged = merge_reports(recon, repair);
    CHECK(merged.all_pass);
    CHECK(merged.total_checks() == 6);
    CHECK(merged.failures().empty());
}

TEST_CASE("corruption is detected and recorded, not thrown") {
    auto toy = make_toy_code();
    auto inst = toy->store(std::vector<std::uint8_t>{0x05, 0x07});
    inst.flip_symbol(2); // node 3's parity symbol
    auto recon = verify_reconstruction_all(*toy, inst);
    CHECK(!recon.all_pass);
    CHECK(!recon.failures().empty());
    auto repair = verify_exact_repair_all(*toy, inst);
    CHECK(!repair.all_pass);
}

TEST_CASE("repair determinism") {
    auto toy = make_toy_code();
    auto inst = toy->store(std::vector<std::uint8_t>{0x11, 0x22});
    std::vector<int> helpers{2, 3};
    auto t1 = toy->repair(inst, 1, helpers);
    auto t2 = toy->repair(inst, 1, helpers);
    CHECK(t1.rebuilt == t2.rebuilt);
    CHECK(t1.sent == t2.sent);
    CHECK(t1.helpers == t2.helpers);
}

TEST_CASE("restricted instances blank hidden state") {
    auto toy = make_toy_code();
    auto inst = toy->store(std::vector<std::uint8_t>{0x05, 0x07});
    std::vector<int> visible{2, 3};
    auto view = restrict_to(inst, visible);
    CHECK(view.file.empty());
    CHECK(view.node(1).empty());
    CHECK(view.node(2) == inst.node(2));
    CHECK(view.node(3) == inst.node(3));
    // A reconstruction that would need node 1 must fail loudly.
    std::vector<int> needs_node1{1, 2};
    CHECK_THROWS(toy->reconstruct(view, needs_node1));
}

TEST_CASE("repairing a node that stores nothing") {
    auto aug = augment(make_toy_code()); // (4,3,3) with node 4 empty
    CHECK(aug->params().alpha_per_node == std::vector<std::uint64_t>{1, 1, 1, 0});
    auto inst = aug->store(std::vector<std::uint8_t>{0x05, 0x07});
    CHECK(inst.node(4).empty());
    std::vector<int> helpers{1, 2, 3};
    auto tr = aug->repair(inst, 4, helpers);
    CHECK(tr.rebuilt.empty());
    CHECK(tr.total_sent() == 0);

    auto recon = verify_reconstruction_all(*aug, inst);
    CHECK(recon.all_pass);
    auto repair = verify_exact_repair_all(*aug, inst);
    CHECK(repair.all_pass);
}

TEST_CASE("capped verification samples and records it") {
    MdsMsrCode code(12, 2); // C(12,2) = 66 subsets, 12*C(11,2) = 660 repairs
    auto inst = code.store(std::vector<std::uint8_t>{0x10, 0x20});
    VerifyOptions opts;
    opts.cap = 20;
    opts.seed = 7;
    auto recon = verify_reconstruction_all(code, inst, opts);
    CHECK(recon.all_pass);
    CHECK(recon.sampled);
    CHECK(recon.reconstruction_results.size() == 20);
    CHECK(recon.reconstruction_space == 66);
    auto repair = verify_exact_repair_all(code, inst, opts);
    CHECK(repair.all_pass);
    CHECK(repair.sampled);
    CHECK(repair.repair_results.size() == 12 * 20);
    CHECK(repair.repair_space == 660);
    auto j = merge_reports(recon, repair).to_json();
    CHECK(j["coverage"]["sampled"].get<bool>());
    CHECK(j["coverage"]["cap"].get<std::uint64_t>() == 20);
    CHECK(j["coverage"]["seed"].get<std::uint64_t>() == 7);
}

TEST_CASE("verification report serializes the documented fields") {
    auto toy = make_toy_code();
    auto inst = toy->store(std::vector<std::uint8_t>{0x05, 0x07});
    auto merged = merge_reports(verify_reconstruction_all(*toy, inst),
                                verify_exact_repair_all(*toy, inst));
    auto j = merged.to_json();
    CHECK(j.contains("params"));
    CHECK(j.contains("total_checks"));
    CHECK(j.contains("failures"));
    CHECK(j.contains("max_bandwidth_used"));
    CHECK(j.contains("per_helper_max"));
    CHECK(j.contains("all_pass"));
    CHECK(j["all_pass"].get<bool>());
    CHECK(j["params"]["n"].get<int>() == 3);
    CHECK(j["params"]["beta_profile"]["kind"].get<std::string>() == "homogeneous");
}

TEST_CASE("flip_symbol addresses symbols across nodes") {
    auto toy = make_toy_code();
    auto inst = toy->store(std::vector<std::uint8_t>{0x05, 0x07});
    inst.flip_symbol(0);
    CHECK(inst.node(1) == std::vector<std::uint8_t>{0x04});
    CHECK_THROWS_AS(inst.flip_symbol(3), std::domain_error);
}
