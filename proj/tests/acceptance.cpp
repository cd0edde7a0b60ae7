// Acceptance checks for the calculator. Each check prints exactly one
// PASS/FAIL line; the process exits nonzero if any of them fail.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbicoh/orbicoh.hpp"
#include "support.hpp"

using namespace orbicoh;

namespace {

std::string data(const std::string& name) {
    return std::string(ORBICOH_DATA_DIR) + "/" + name;
}

SectorAtlas z3_atlas() {
    SphereQuotientPresentation p;
    p.complex_coords = 2;
    p.group = GroupSpec{{3}};
    p.weights = {{1, 0}};
    return sphere_quotient_atlas(p);
}

SectorAtlas wps_atlas() {
    return wps_circle_atlas(WpsCirclePresentation{{1, 2, 2, 3, 3, 3}});
}

SectorLabel g(std::int64_t r) { return SectorLabel{GroupElement{r}}; }

SectorClass unit_class(const RingSystem& sys, const SectorLabel& l) {
    return SectorClass{l, ModelClass{{sys.table(l).gen_index("1"), Rational(1)}}};
}

SectorClass gen_class(const RingSystem& sys, const SectorLabel& l, const std::string& gen) {
    return SectorClass{l, ModelClass{{sys.table(l).gen_index(gen), Rational(1)}}};
}

bool check_sector_inventory() {
    const SectorAtlas atlas = z3_atlas();
    if (atlas.sectors.size() != 3) return false;
    int twisted = 0;
    for (const Sector& s : atlas.sectors) {
        if (is_identity_label(s.label)) continue;
        ++twisted;
        if (!(s.model == make_circle())) return false;
        if (label_string(s.label) == "1" && !(s.iota == Rational(1, 3))) return false;
        if (label_string(s.label) == "2" && !(s.iota == Rational(2, 3))) return false;
    }
    return twisted == 2;
}

bool check_obstruction_ranks() {
    const SectorAtlas atlas = z3_atlas();
    const MultiSector* low = atlas.find_multisector({g(1), g(1), g(1)});
    const MultiSector* high = atlas.find_multisector({g(2), g(2), g(2)});
    if (!low || low->rank_e != 0) return false;
    if (!high || high->rank_e != 2 || high->dim != 1) return false;
    // the rank decides before the degree filter does
    const RingSystem sys(atlas);
    const auto a = sys.three_point(unit_class(sys, g(2)), unit_class(sys, g(2)),
                                   gen_class(sys, g(2), "s"));
    const auto b = sys.three_point(unit_class(sys, g(2)), unit_class(sys, g(2)),
                                   unit_class(sys, g(2)));
    return a.status == ThreePointStatus::rank_exceeds_dim &&
           b.status == ThreePointStatus::rank_exceeds_dim && a.value.is_zero() &&
           b.value.is_zero();
}

bool check_wps_inventory() {
    const SectorAtlas atlas = wps_atlas();
    if (atlas.sectors.size() != 4) return false;
    const ModelSpace p333 = make_product({make_weighted_proj({3, 3, 3}), make_circle()});
    const ModelSpace p22 = make_product({make_weighted_proj({2, 2}), make_circle()});
    const Sector& third = atlas.sector(SectorLabel{Rational(1, 3)});
    const Sector& half = atlas.sector(SectorLabel{Rational(1, 2)});
    const Sector& two_thirds = atlas.sector(SectorLabel{Rational(2, 3)});
    if (!(third.model == p333) || !(third.iota == Rational(5, 3)) || third.dim != 5) return false;
    if (!(half.model == p22) || !(half.iota == Rational(2))) return false;
    if (!(two_thirds.model == p333) || !(two_thirds.iota == Rational(4, 3))) return false;

    const SectorLabel t{Rational(1, 3)};
    const SectorLabel h{Rational(1, 2)};
    const SectorLabel u{Rational(2, 3)};
    const SectorLabel e{Rational(0)};
    const MultiSector* cyc1 = atlas.find_multisector({t, t, t});
    const MultiSector* cyc2 = atlas.find_multisector({u, u, u});
    const MultiSector* mixed = atlas.find_multisector({t, u, e});
    const MultiSector* halves = atlas.find_multisector({h, h, e});
    if (!cyc1 || cyc1->rank_e != 4) return false;
    if (!cyc2 || cyc2->rank_e != 2) return false;
    if (!mixed || mixed->rank_e != 0) return false;
    if (!halves || halves->rank_e != 0) return false;

    // on the unobstructed mixed family only an odd test class can pair
    const RingSystem sys(atlas);
    const auto even = sys.three_point(gen_class(sys, t, "h⊗1"), gen_class(sys, u, "h⊗1"),
                                      gen_class(sys, e, "h⊗1"));
    const auto odd = sys.three_point(gen_class(sys, t, "h⊗1"), gen_class(sys, u, "h⊗1"),
                                     gen_class(sys, e, "1⊗s"));
    return even.status == ThreePointStatus::degree_mismatch &&
           odd.status == ThreePointStatus::value && !odd.value.is_zero();
}

bool check_poincare_polynomial() {
    const auto coh = assemble(z3_atlas());
    return series_string(coh.total) == "1 + t^{2/3} + t^{4/3} + t^{5/3} + t^{7/3} + t^3" &&
           symmetric_about(coh.total, Rational(3));
}

bool check_cylinder_comparison() {
    if (!cross_r_compare(z3_atlas()).pass) return false;
    if (!cross_r_compare(wps_atlas()).pass) return false;
    if (!cross_r_compare(load_input(data("s3_mod_z3_raw.json")).atlas).pass) return false;
    if (!cross_r_compare(load_input(data("trivial_s3.yaml")).atlas).pass) return false;
    std::mt19937 rng(8144);
    for (int i = 0; i < 50; ++i) {
        const auto atlas = sphere_quotient_atlas(testing::random_sphere_presentation(rng));
        if (!cross_r_compare(atlas).pass) return false;
    }
    for (int i = 0; i < 50; ++i) {
        const auto atlas = wps_circle_atlas(testing::random_wps_presentation(rng));
        if (!cross_r_compare(atlas).pass) return false;
    }
    return true;
}

bool check_random_invariants() {
    std::mt19937 rng(2417);
    for (int trial = 0; trial < 200; ++trial) {
        const SectorAtlas atlas = sphere_quotient_atlas(testing::random_sphere_presentation(rng));
        const LabelAlgebra algebra = atlas.labels();
        for (const MultiSector& ms : atlas.multisectors) {
            if (ms.rank_e < 0 || ms.rank_e % 2 != 0) return false;
            if (ms.genus < 0) return false;
        }
        for (const Sector& s : atlas.sectors) {
            const Sector& inv = atlas.sector(algebra.inverse(s.label));
            if (!(Rational(2) * (s.iota + inv.iota) == Rational(atlas.ambient_dim - s.dim)))
                return false;
            if (!iota_integrality_consistent(s, algebra)) return false;
        }
    }
    return true;
}

bool check_ring_complete() {
    const RingSystem sys(z3_atlas());
    const StructureConstants sc = sys.structure_constants();
    if (!sc.complete() || !sc.missing_oracle.empty()) return false;
    if (sc.basis.size() != 6) return false;
    const int n = static_cast<int>(sc.basis.size());
    for (int j = 0; j < n; ++j) {
        const std::map<int, Rational> expect{{j, Rational(1)}};
        if (sc.table.at({0, j}) != expect || sc.table.at({j, 0}) != expect) return false;
    }
    for (const auto& [pair, expansion] : sc.table)
        for (const auto& [k, coeff] : expansion) {
            if (coeff.is_zero()) return false;
            if (!(sc.basis[static_cast<std::size_t>(k)].degree ==
                  sc.basis[static_cast<std::size_t>(pair.first)].degree +
                      sc.basis[static_cast<std::size_t>(pair.second)].degree))
                return false;
        }
    const AssociativityReport assoc = associativity_check(sc);
    return assoc.pass && assoc.checked == 216 && assoc.skipped == 0;
}

bool check_oracle_workflow() {
    const RingSystem blocked(wps_atlas());
    const StructureConstants sc = blocked.structure_constants();
    if (sc.complete()) return false;
    std::vector<OracleKey> missing;
    for (const auto& m : sc.missing_oracle) missing.push_back(m.key);
    const std::vector<OracleKey> expect{OracleKey{{"1/3", "1/3", "1/3"}, "1⊗s"},
                                        OracleKey{{"2/3", "2/3", "2/3"}, "h⊗s"}};
    if (missing != expect) return false;

    const EulerOracle oracle = load_oracle(data("wps_euler_oracle.yaml"));
    const RingSystem resolved(wps_atlas(), oracle);
    const StructureConstants full = resolved.structure_constants();
    if (!full.complete() || !full.missing_oracle.empty()) return false;
    const AssociativityReport assoc = associativity_check(full);
    return assoc.pass && assoc.skipped == 0;
}

bool check_determinism() {
    const std::string dir =
        (std::filesystem::temp_directory_path() / "orbicoh_acceptance").string();
    std::filesystem::create_directories(dir);
    const std::vector<std::string> inputs = {data("s3_mod_z3.yaml"), data("wps_1_2_2_3_3_3.yaml"),
                                             data("s3_mod_z3_raw.json"), data("trivial_s3.yaml")};
    const std::vector<std::string> commands = {"sectors", "cohomology", "ring", "verify"};
    const std::vector<std::string> formats = {"table", "json"};
    int case_id = 0;
    for (const auto& input : inputs)
        for (const auto& cmd : commands)
            for (const auto& fmt : formats) {
                ++case_id;
                const std::string out1 = dir + "/a" + std::to_string(case_id);
                const std::string out2 = dir + "/b" + std::to_string(case_id);
                int codes[2];
                const std::string* outs[2] = {&out1, &out2};
                for (int i = 0; i < 2; ++i) {
                    const std::string shell = std::string(ORBICOH_CLI_PATH) + " " + cmd + " " +
                                              input + " --format " + fmt + " --out " + *outs[i] +
                                              " > /dev/null 2>&1";
                    const int status = std::system(shell.c_str());
                    if (status < 0 || !WIFEXITED(status)) return false;
                    codes[i] = WEXITSTATUS(status);
                }
                if (codes[0] != codes[1]) return false;
                std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
                std::stringstream s1, s2;
                s1 << f1.rdbuf();
                s2 << f2.rdbuf();
                if (s1.str() != s2.str() || s1.str().empty()) return false;
            }
    return true;
}

int run_all() {
    const std::vector<std::pair<std::string, std::function<bool()>>> checks = {
        {"z3 sector inventory", check_sector_inventory},
        {"z3 obstruction ranks force zero", check_obstruction_ranks},
        {"wps sector inventory and degree filter", check_wps_inventory},
        {"poincare polynomial and duality symmetry", check_poincare_polynomial},
        {"cylinder comparison on shipped and random atlases", check_cylinder_comparison},
        {"random presentation invariants", check_random_invariants},
        {"z3 ring table complete and associative", check_ring_complete},
        {"oracle inventory and completion", check_oracle_workflow},
        {"deterministic command output", check_determinism},
    };
    int failures = 0;
    for (const auto& [name, fn] : checks) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            std::cout << "FAIL: " << name << " (" << e.what() << ")\n";
            ++failures;
            continue;
        }
        std::cout << (ok ? "PASS: " : "FAIL: ") << name << "\n";
        if (!ok) ++failures;
    }
    return failures;
}

} // namespace

int main() { return run_all() == 0 ? 0 : 1; }
