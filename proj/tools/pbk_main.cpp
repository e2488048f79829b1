#include "pbk/bergman_kernel.hpp"
#include "pbk/errors.hpp"
#include "pbk/model_catalog.hpp"
#include "pbk/radial_geometry.hpp"
#include "pbk/report.hpp"
#include "pbk/section_norms.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::ordered_json;

pbk::ProductModel load_model(const std::string& path) {
    if (path.empty()) {
        // Reference single-factor model.
        return pbk::make_product({pbk::disk_factor(1.0)});
    }
    std::ifstream in(path);
    if (!in) {
        throw pbk::parameter_error("cannot open model file '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in).get<pbk::ProductModel>();
    } catch (const nlohmann::json::exception& e) {
        throw pbk::parameter_error(std::string("bad model json: ") + e.what());
    }
}

int run_norms(int m, int j, int k, const std::string& method) {
    pbk::NormValue value{};
    ordered_json out;
    out["m"] = m;
    out["j"] = j;
    out["k"] = k;
    out["method"] = method;
    if (method == "closed") {
        value = pbk::norm_closed(m, j, k);
    } else if (method == "quadrature") {
        value = pbk::norm_quadrature(m, j, k);
    } else if (method == "exact") {
        const int excess = j + k - m;
        if (excess < 0 || excess % 3 != 0) {
            throw pbk::parameter_error(
                "exact norms live on the sublattice j + k = m + 3i");
        }
        value = pbk::norm_exact_graded(m, excess / 3, j);
        out["exact"] = pbk::to_string(*value.exact);
    } else {
        throw pbk::parameter_error("unknown method '" + method + "'");
    }
    out["value"] = value.value;
    out["error_bound"] = value.error_bound;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_kernel(const std::string& model_path, int m, double r,
               const std::string& subspace, double tol) {
    const pbk::ProductModel model = load_model(model_path);
    ordered_json out;
    out["m"] = m;
    out["r"] = r;
    out["subspace"] = subspace;
    if (subspace == "graded") {
        const pbk::KernelEvaluation eval = pbk::model_kernel(model, m, r, tol);
        out["value"] = eval.value;
        out["tail_bound"] = eval.tail_bound;
        out["terms"] = eval.terms;
        out["expected_constant"] = pbk::expected_constant(model, m);
    } else if (subspace == "full") {
        if (model.factors.size() != 1 ||
            model.factors.front().kind !=
                pbk::FactorKind::punctured_disk_family) {
            throw pbk::parameter_error(
                "the full subspace is defined for a single disk factor");
        }
        const auto& f = model.factors.front();
        const double lm = f.m_scale * f.scale * m;
        const pbk::KernelEvaluation eval = pbk::full_kernel(
            static_cast<int>(lm), pbk::SplitPoint{0.5 * r, 0.5 * r}, tol);
        out["value"] = eval.value;
        out["tail_bound"] = eval.tail_bound;
        out["terms"] = eval.terms;
    } else {
        throw pbk::parameter_error("unknown subspace '" + subspace + "'");
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_curvature(const std::string& model_path, double r, bool invariants) {
    const pbk::ProductModel model = load_model(model_path);
    ordered_json out;
    out["r"] = r;
    double s = 0.0;
    for (const pbk::ModelFactor& f : model.factors) {
        s += pbk::scalar_curvature(f.potential(), r, f.dim) / f.scale;
    }
    out["scalar_curvature"] = s;
    if (invariants) {
        if (model.factors.size() != 1 ||
            model.factors.front().kind !=
                pbk::FactorKind::punctured_disk_family) {
            throw pbk::parameter_error(
                "invariants are computed for a single disk factor");
        }
        const pbk::CurvatureReport rep =
            pbk::curvature_invariants(model.factors.front().potential(), r);
        out["det_h"] = rep.det_h;
        out["riem_sq"] = rep.riem_sq;
        out["ric_sq"] = rep.ric_sq;
        out["combo"] = rep.combo;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_model(const std::string& instance, int dim) {
    pbk::CurvatureSign sign;
    if (instance == "negative") {
        sign = pbk::CurvatureSign::negative;
    } else if (instance == "zero") {
        sign = pbk::CurvatureSign::zero;
    } else if (instance == "positive") {
        sign = pbk::CurvatureSign::positive;
    } else {
        throw pbk::parameter_error("unknown instance '" + instance + "'");
    }
    const pbk::WitnessInstance inst = pbk::witness_instance(dim, sign);
    std::cerr << "scalar curvature " << inst.scalar_curvature << "\n";
    const nlohmann::json j = inst.model;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_verify(const std::string& config_path, const std::string& out_path,
               const std::string& format) {
    pbk::RunConfig cfg;
    std::string source = config_path;
    if (source.empty()) {
        if (const char* env = std::getenv("PBK_CONFIG")) {
            source = env;
        }
    }
    cfg = source.empty() ? pbk::default_config() : pbk::parse_config(source);

    const pbk::VerificationReport report = pbk::run_verification_suite(cfg);
    const std::string payload = (format == "csv") ? pbk::export_csv(report)
                                                  : pbk::export_json(report);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            throw pbk::parameter_error("cannot write '" + out_path + "'");
        }
        out << payload;
        ordered_json summary;
        summary["overall_pass"] = report.overall_pass;
        summary["any_inconclusive"] = report.any_inconclusive;
        summary["checks"] = report.checks.size();
        summary["out"] = out_path;
        std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << payload;
    }
    for (const pbk::CheckResult& c : report.checks) {
        if (!c.passed()) {
            std::cerr << "check failed: " << c.id << " (" << c.anchor << ")\n";
        }
    }
    if (report.any_inconclusive) {
        return 2;
    }
    return report.overall_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted kernels and curvature of radial Kahler metrics"};
    app.require_subcommand(1);

    auto* norms = app.add_subcommand("norms", "weighted monomial section norms");
    int n_m = 3, n_j = 0, n_k = 0;
    std::string n_method = "closed";
    norms->add_option("--m", n_m, "weight level")->required();
    norms->add_option("--j", n_j, "first exponent")->required();
    norms->add_option("--k", n_k, "second exponent")->required();
    norms->add_option("--method", n_method, "closed | exact | quadrature");

    auto* kernel = app.add_subcommand("kernel", "weighted kernel evaluation");
    std::string k_model;
    int k_m = 3;
    double k_r = 0.5, k_tol = 1e-12;
    std::string k_subspace = "graded";
    kernel->add_option("--model", k_model, "model json file");
    kernel->add_option("--m", k_m, "kernel level")->required();
    kernel->add_option("--r", k_r, "evaluation radius")->required();
    kernel->add_option("--subspace", k_subspace, "graded | full");
    kernel->add_option("--tol", k_tol, "tail tolerance");

    auto* curvature = app.add_subcommand("curvature", "scalar curvature");
    std::string c_model;
    double c_r = 0.5;
    bool c_invariants = false;
    curvature->add_option("--model", c_model, "model json file");
    curvature->add_option("--r", c_r, "evaluation radius")->required();
    curvature->add_flag("--invariants", c_invariants,
                        "also print curvature norms");

    auto* model = app.add_subcommand("model", "catalogued product models");
    std::string m_instance = "negative";
    int m_dim = 2;
    model->add_option("--instance", m_instance, "negative | zero | positive")
        ->required();
    model->add_option("--dim", m_dim, "total complex dimension")->required();

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    std::string v_config, v_out, v_format = "json";
    verify->add_option("--config", v_config, "config file (or PBK_CONFIG)");
    verify->add_option("--out", v_out, "report output path");
    verify->add_option("--format", v_format, "json | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (norms->parsed()) {
            return run_norms(n_m, n_j, n_k, n_method);
        }
        if (kernel->parsed()) {
            return run_kernel(k_model, k_m, k_r, k_subspace, k_tol);
        }
        if (curvature->parsed()) {
            return run_curvature(c_model, c_r, c_invariants);
        }
        if (model->parsed()) {
            return run_model(m_instance, m_dim);
        }
        if (verify->parsed()) {
            return run_verify(v_config, v_out, v_format);
        }
    } catch (const pbk::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
