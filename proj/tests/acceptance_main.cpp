// Acceptance gate for the verification laboratory. Each criterion prints one
// [PASS]/[FAIL] line; details follow only on failure. Checks are always on:
// nothing here compiles out in Release.

#include "pbk/bergman_kernel.hpp"
#include "pbk/errors.hpp"
#include "pbk/model_catalog.hpp"
#include "pbk/radial_geometry.hpp"
#include "pbk/radial_potential.hpp"
#include "pbk/rational.hpp"
#include "pbk/report.hpp"
#include "pbk/section_norms.hpp"
#include "pbk/special_functions.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

const double kPi = std::acos(-1.0);

int g_failures = 0;
bool g_current_ok = true;
std::vector<std::string> g_notes;

void expect(bool cond, const std::string& what) {
    if (!cond) {
        g_current_ok = false;
        g_notes.push_back(what);
    }
}

void expect_close(double got, double want, double rel_tol, const std::string& what) {
    double scale = std::max(std::fabs(want), 1e-300);
    if (!(std::fabs(got - want) / scale <= rel_tol)) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " (rel tol "
           << rel_tol << ")";
        expect(false, os.str());
    }
}

void criterion(int id, const char* label, double time_limit_s,
               const std::function<void()>& body) {
    g_current_ok = true;
    g_notes.clear();
    auto t0 = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        expect(false, std::string("unexpected exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0.0 && secs >= time_limit_s) {
        std::ostringstream os;
        os << "runtime " << secs << "s exceeds limit " << time_limit_s << "s";
        expect(false, os.str());
    }
    std::printf("[%s] %02d %s (%.2fs)\n", g_current_ok ? "PASS" : "FAIL", id,
                label, secs);
    if (!g_current_ok) {
        ++g_failures;
        for (const auto& note : g_notes) {
            std::printf("       - %s\n", note.c_str());
        }
    }
    std::fflush(stdout);
}

bool is_convergent(int m, int j, int k) { return m >= 3 && j + k > m - 3; }

std::string strip_runtime_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        out += line.substr(0, line.rfind(','));
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string g_cli_path;  // resolved from argv[0] in main

}  // namespace

int main(int, char** argv) {
    g_cli_path = (std::filesystem::path(argv[0]).parent_path() / "pbk").string();
    const auto grid = pbk::default_config().radii;

    criterion(1, "graded kernels reproduce (4/3)(m-1)(m-2) on the grid", 5.0, [&] {
        for (int m : {3, 4, 5, 8}) {
            auto rep = pbk::constancy_report(m, pbk::Subspace::graded,
                                             grid.data(), int(grid.size()));
            std::ostringstream os;
            os << "graded m = " << m << " max rel deviation " << rep.max_rel_deviation;
            expect(rep.max_rel_deviation < 1e-8, os.str());
        }
    });

    criterion(2, "convergent norms agree across three routes", 20.0, [&] {
        long checked = 0;
        for (int m = 3; m <= 8; ++m) {
            for (int j = 0; j <= 12; ++j) {
                for (int k = 0; k <= 12; ++k) {
                    if (!is_convergent(m, j, k)) continue;
                    double a = pbk::norm_closed(m, j, k).value;
                    double q = pbk::norm_quadrature(m, j, k).value;
                    if (std::fabs(a - q) / std::fabs(a) > 1e-10) {
                        std::ostringstream os;
                        os << "closed vs quadrature at (" << m << ", " << j
                           << ", " << k << ")";
                        expect(false, os.str());
                    }
                    int i3 = j + k - m;
                    if (i3 >= 0 && i3 % 3 == 0) {
                        auto exact = pbk::norm_exact_graded(m, i3 / 3, j);
                        double e = pbk::to_double(*exact.exact);
                        if (std::fabs(a - e) / e > 1e-12) {
                            std::ostringstream os;
                            os << "closed vs exact rational at (" << m << ", "
                               << j << ", " << k << ")";
                            expect(false, os.str());
                        }
                    }
                    ++checked;
                }
            }
        }
        expect(checked > 900, "lattice sweep unexpectedly small");
        // The canonical graded values in exact rational arithmetic.
        expect(*pbk::norm_exact_graded(3, 0, 1).exact == pbk::Rational(1, 8),
               "norm of the degree-(1,2) section at level 3 is not 1/8");
        expect(*pbk::norm_exact_graded(3, 0, 0).exact == pbk::Rational(3, 8),
               "norm of the degree-(0,3) section at level 3 is not 3/8");
    });

    criterion(3, "divergent indices refuse and certify unbounded growth", 0.0, [&] {
        for (int m = 1; m <= 8; ++m) {
            for (int j = 0; j <= 4; ++j) {
                for (int k = 0; k <= 4; ++k) {
                    if (is_convergent(m, j, k)) continue;
                    bool threw = false;
                    try {
                        pbk::norm_closed(m, j, k);
                    } catch (const pbk::divergent_index_error&) {
                        threw = true;
                    }
                    bool threw_q = false;
                    try {
                        pbk::norm_quadrature(m, j, k);
                    } catch (const pbk::divergent_index_error&) {
                        threw_q = true;
                    }
                    if (!threw || !threw_q) {
                        std::ostringstream os;
                        os << "(" << m << ", " << j << ", " << k
                           << ") accepted though divergent";
                        expect(false, os.str());
                    }
                }
            }
        }
        for (int m : {3, 4, 5}) {
            for (int j = 0; j <= 2; ++j) {
                for (int k = 0; k <= 2; ++k) {
                    if (is_convergent(m, j, k)) continue;
                    auto nb = pbk::nearest_convergent(m, j, k);
                    double target = 1e3 * pbk::norm_closed(nb.m, nb.j, nb.k).value;
                    auto probe = pbk::divergence_probe(m, j, k, target);
                    if (!probe.exceeded || !(probe.partial > target)) {
                        std::ostringstream os;
                        os << "probe at (" << m << ", " << j << ", " << k
                           << ") stalled below 1e3x neighbor";
                        expect(false, os.str());
                    }
                }
            }
        }
    });

    criterion(4, "scalar curvature lands on the pinned constants", 2.0, [&] {
        auto ref = pbk::RadialPotential::family(1.0, 2.0, 1.0);
        auto m3 = pbk::RadialPotential::family(3.0, 2.0, 1.0);
        auto m4 = pbk::RadialPotential::family(4.0, 2.0, 1.0);
        auto fs = pbk::RadialPotential::fubini_study();
        auto flat = pbk::RadialPotential::flat();
        for (double r : grid) {
            expect_close(pbk::scalar_curvature(ref, r, 2), -24.0 * kPi, 1e-9,
                         "reference member curvature");
            expect_close(pbk::scalar_curvature(m3, r, 2), -8.0 * kPi, 1e-9,
                         "m = 3 member curvature");
            expect_close(pbk::scalar_curvature(m4, r, 2), -6.0 * kPi, 1e-9,
                         "m = 4 member curvature");
            expect_close(pbk::scalar_curvature(fs, r, 1), 8.0 * kPi, 1e-9,
                         "rational-curve curvature");
            expect(std::fabs(pbk::scalar_curvature(flat, r, 1)) < 1e-9,
                   "flat curvature nonzero");
        }
    });

    criterion(5, "curvature invariant combination is the constant -960 pi^2", 0.0, [&] {
        double lo = 0.0, hi = 0.0, sum = 0.0;
        bool first = true;
        for (double r : grid) {
            double combo = pbk::curvature_invariants(
                               pbk::RadialPotential::family(1.0, 2.0, 1.0), r)
                               .combo;
            expect_close(combo, -960.0 * kPi * kPi, 1e-6, "invariant combination");
            if (first || combo < lo) lo = combo;
            if (first || combo > hi) hi = combo;
            sum += combo;
            first = false;
        }
        double spread = (hi - lo) / std::fabs(sum / double(grid.size()));
        std::ostringstream os;
        os << "combination varies by " << spread << " across the grid";
        expect(spread < 1e-8, os.str());
    });

    criterion(6, "full kernel varies while the graded kernel stays flat", 0.0, [&] {
        auto full_lo = pbk::full_kernel(3, {0.05, 0.05});
        auto full_hi = pbk::full_kernel(3, {0.25, 0.25});
        double gap = std::fabs(full_lo.value - full_hi.value) / std::fabs(full_hi.value);
        std::ostringstream os;
        os << "full kernel gap " << gap << " at r = 0.1 vs 0.5";
        expect(gap > 1e-3, os.str());
        for (double r : {0.1, 0.5}) {
            auto g = pbk::graded_kernel(3, {r / 2.0, r / 2.0});
            expect_close(g.value, 8.0 / 3.0, 1e-8, "graded kernel at the same radii");
        }
    });

    criterion(7, "product models hit their kernel constants and curvatures", 0.0, [&] {
        struct Instance {
            int n;
            pbk::CurvatureSign sign;
            double constant;
            double curvature;
        };
        const Instance instances[] = {
            {3, pbk::CurvatureSign::negative, 8.0, -24.0 * kPi},
            {4, pbk::CurvatureSign::zero, 16.0 / 3.0, 0.0},
            {4, pbk::CurvatureSign::positive, 16.0, 2.0 * kPi},
        };
        for (const auto& inst : instances) {
            auto witness = pbk::witness_instance(inst.n, inst.sign);
            int level = witness.model.min_level();
            auto eval = pbk::model_kernel(witness.model, level, 0.4);
            expect_close(pbk::expected_constant(witness.model, level),
                         inst.constant, 1e-13, "expected constant mismatch");
            if (!(std::fabs(eval.value - inst.constant) <=
                  eval.tail_bound + 1e-12 * std::fabs(inst.constant))) {
                std::ostringstream os;
                os << "product kernel " << eval.value << " misses "
                   << inst.constant << " beyond tail bound " << eval.tail_bound;
                expect(false, os.str());
            }
            // Curvature by differentiating the potentials, not the catalog.
            double s = 0.0;
            for (const auto& f : witness.model.factors) {
                double r = f.kind == pbk::FactorKind::punctured_disk_family ? 0.4 : 0.7;
                s += pbk::scalar_curvature(f.potential(), r, f.dim) / f.scale;
            }
            double scale = std::max(std::fabs(inst.curvature), 1.0);
            if (!(std::fabs(s - inst.curvature) < 1e-9 * scale)) {
                std::ostringstream os;
                os << "instance curvature " << s << " misses " << inst.curvature;
                expect(false, os.str());
            }
        }
    });

    criterion(8, "generating identity truncation stays certified", 0.0, [&] {
        for (int m : {1, 3, 5}) {
            for (double r : {0.3, 0.5, 0.9}) {
                int i_max = 1;
                while (i_max < 20000 &&
                       pbk::generating_check(m, r, i_max).tail_bound > 2e-13) {
                    ++i_max;
                }
                auto chk = pbk::generating_check(m, r, i_max);
                std::ostringstream os;
                os << "m = " << m << ", r = " << r << ": residual "
                   << chk.residual << ", bound " << chk.tail_bound;
                expect(chk.residual < 1e-12, "residual too large: " + os.str());
                expect(chk.residual <= chk.tail_bound,
                       "bound fails to dominate: " + os.str());
            }
        }
    });

    criterion(9, "radial rays classify: puncture finite, boundary infinite", 0.0, [&] {
        auto ref = pbk::RadialPotential::family(1.0, 2.0, 1.0);
        expect(pbk::radial_completeness(ref, pbk::Endpoint::inner) ==
                   pbk::Completeness::finite_distance,
               "inner ray misclassified");
        expect(pbk::radial_completeness(ref, pbk::Endpoint::outer) ==
                   pbk::Completeness::infinite_distance,
               "outer ray misclassified");
    });

    criterion(10, "log-gamma recurrence and reflection hold to 1e-13", 0.0, [&] {
        for (double x : {1.0 / 3.0, 2.0 / 3.0, 1.5, 7.25}) {
            double resid = pbk::log_gamma(x + 1.0) - pbk::log_gamma(x) - std::log(x);
            std::ostringstream os;
            os << "recurrence residual " << resid << " at x = " << x;
            expect(std::fabs(resid) < 1e-13, os.str());
        }
        double refl = pbk::log_gamma(1.0 / 3.0) + pbk::log_gamma(2.0 / 3.0) -
                      std::log(2.0 * kPi / std::sqrt(3.0));
        expect(std::fabs(refl) < 1e-13, "reflection residual too large");
    });

    criterion(11, "verification CLI is deterministic and fast", 0.0, [&] {
        namespace fs = std::filesystem;
        expect(fs::exists(g_cli_path), "CLI binary not found at " + g_cli_path);
        std::string out_a = "acceptance_verify_a.csv";
        std::string out_b = "acceptance_verify_b.csv";
        auto run = [&](const std::string& out) {
            std::string cmd = "env -u PBK_CONFIG " + g_cli_path +
                              " verify --format csv --out " + out +
                              " > /dev/null 2>&1";
            return std::system(cmd.c_str());
        };
        auto t0 = std::chrono::steady_clock::now();
        int rc_a = run(out_a);
        double first_secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        int rc_b = run(out_b);
        expect(rc_a == 0, "first verify run exited nonzero");
        expect(rc_b == 0, "second verify run exited nonzero");
        std::ostringstream os;
        os << "verify run took " << first_secs << "s";
        expect(first_secs < 60.0, os.str());
        std::string a = read_file(out_a);
        std::string b = read_file(out_b);
        expect(!a.empty(), "first CSV is empty");
        expect(strip_runtime_column(a) == strip_runtime_column(b),
               "CSV differs between runs outside the runtime column");
        fs::remove(out_a);
        fs::remove(out_b);
    });

    if (g_failures != 0) {
        std::printf("%d of 11 criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
