#include "pbk/model_catalog.hpp"

#include "pbk/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pbk {

namespace {

constexpr double kPi = std::numbers::pi;

/// Effective weight exponent of a factor at product level m; every kernel
/// query must land on a positive integer.
int effective_level(const ModelFactor& f, int m) {
    const double lm = f.m_scale * f.scale * m;
    const double rounded = std::round(lm);
    if (!(rounded >= 1.0) || std::abs(lm - rounded) > 1e-9) {
        throw level_mismatch_error(
            "factor level " + std::to_string(lm) +
            " at product level " + std::to_string(m) +
            " is not a positive integer");
    }
    return static_cast<int>(rounded);
}

} // namespace

std::string to_string(FactorKind k) {
    switch (k) {
    case FactorKind::punctured_disk_family: return "punctured-disk-family";
    case FactorKind::flat: return "flat";
    case FactorKind::fubini_study: return "fubini-study";
    }
    throw parameter_error("unknown factor kind");
}

FactorKind factor_kind_from_string(const std::string& s) {
    if (s == "punctured-disk-family") return FactorKind::punctured_disk_family;
    if (s == "flat") return FactorKind::flat;
    if (s == "fubini-study") return FactorKind::fubini_study;
    throw parameter_error("unknown factor kind '" + s + "'");
}

RadialPotential ModelFactor::potential() const {
    switch (kind) {
    case FactorKind::punctured_disk_family:
        return RadialPotential::family(m_scale, lambda, xi);
    case FactorKind::flat:
        return RadialPotential::flat();
    case FactorKind::fubini_study:
        return RadialPotential::fubini_study();
    }
    throw parameter_error("unknown factor kind");
}

double ModelFactor::base_scalar_curvature() const {
    switch (kind) {
    case FactorKind::punctured_disk_family:
        return -24.0 * kPi / m_scale;
    case FactorKind::flat:
        return 0.0;
    case FactorKind::fubini_study:
        return 8.0 * kPi;
    }
    throw parameter_error("unknown factor kind");
}

int ProductModel::min_level() const {
    for (int m = 1; m <= 1000; ++m) {
        bool ok = true;
        for (const ModelFactor& f : factors) {
            const double lm = f.m_scale * f.scale * m;
            const double rounded = std::round(lm);
            if (std::abs(lm - rounded) > 1e-9 || rounded < 1.0) {
                ok = false;
                break;
            }
            if (f.kind == FactorKind::punctured_disk_family && rounded < 3.0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return m;
        }
    }
    throw parameter_error("no admissible kernel level below 1000");
}

ModelFactor disk_factor(double m_scale, double scale) {
    ModelFactor f;
    f.kind = FactorKind::punctured_disk_family;
    f.m_scale = m_scale;
    f.scale = scale;
    f.dim = 2;
    return f;
}

ModelFactor flat_factor(int dim, double scale) {
    ModelFactor f;
    f.kind = FactorKind::flat;
    f.scale = scale;
    f.dim = dim;
    return f;
}

ModelFactor fs_factor(double scale) {
    ModelFactor f;
    f.kind = FactorKind::fubini_study;
    f.scale = scale;
    f.dim = 1;
    return f;
}

ProductModel make_product(std::vector<ModelFactor> factors) {
    if (factors.empty()) {
        throw parameter_error("product model needs at least one factor");
    }
    int dim = 0;
    for (const ModelFactor& f : factors) {
        if (!(f.scale > 0.0)) {
            throw parameter_error("factor scale must be positive");
        }
        if (f.dim < 1) {
            throw parameter_error("factor dimension must be >= 1");
        }
        if (f.kind == FactorKind::punctured_disk_family) {
            if (!(f.m_scale >= 1.0)) {
                throw parameter_error("disk factor needs m_scale >= 1");
            }
            if (f.dim != 2) {
                throw parameter_error("disk factor has complex dimension 2");
            }
        }
        if (f.kind == FactorKind::fubini_study && f.dim != 1) {
            throw parameter_error("rational-curve factor has complex dimension 1");
        }
        dim += f.dim;
    }
    ProductModel model;
    model.factors = std::move(factors);
    model.total_dim = dim;
    return model;
}

double model_scalar_curvature(const ProductModel& model) {
    double s = 0.0;
    for (const ModelFactor& f : model.factors) {
        s += f.base_scalar_curvature() / f.scale;
    }
    return s;
}

double expected_constant(const ProductModel& model, int m) {
    double c = 1.0;
    for (const ModelFactor& f : model.factors) {
        const int lm = effective_level(f, m);
        switch (f.kind) {
        case FactorKind::punctured_disk_family:
            c *= graded_constant(lm);
            break;
        case FactorKind::flat:
            c *= std::pow(double(lm), f.dim);
            break;
        case FactorKind::fubini_study:
            c *= lm + 1.0;
            break;
        }
    }
    return c;
}

KernelEvaluation model_kernel(const ProductModel& model, int m, double r,
                              double tol) {
    if (m < 1) {
        throw parameter_error("product level must be >= 1");
    }
    KernelEvaluation out{1.0, 0.0, 0, m, r};
    double rel_tail = 0.0;
    for (const ModelFactor& f : model.factors) {
        const int lm = effective_level(f, m);
        KernelEvaluation e;
        switch (f.kind) {
        case FactorKind::punctured_disk_family:
            // The closed-form summation route assumes the reference member.
            if (f.lambda != 2.0 || f.xi != 1.0) {
                throw parameter_error(
                    "disk kernels need the reference member lambda = 2, xi = 1");
            }
            e = graded_kernel(lm, SplitPoint{0.5 * r, 0.5 * r}, tol);
            break;
        case FactorKind::flat:
            e = flat_kernel(lm, r, f.dim);
            break;
        case FactorKind::fubini_study:
            e = fs_kernel(lm, r);
            break;
        }
        out.value *= e.value;
        out.terms += e.terms;
        rel_tail += e.tail_bound / std::abs(e.value);
    }
    // First-order propagation of the per-factor tail bounds.
    out.tail_bound = std::abs(out.value) * rel_tail * (1.0 + 1e-12);
    return out;
}

WitnessInstance witness_instance(int n, CurvatureSign sign) {
    std::vector<ModelFactor> factors;
    double s = 0.0;
    switch (sign) {
    case CurvatureSign::negative:
        if (n < 2) {
            throw parameter_error("negative instance needs dimension >= 2");
        }
        factors.push_back(disk_factor(1.0));
        if (n > 2) {
            factors.push_back(flat_factor(n - 2));
        }
        s = -24.0 * kPi;
        break;
    case CurvatureSign::zero:
        if (n < 3) {
            throw parameter_error("zero instance needs dimension >= 3");
        }
        factors.push_back(disk_factor(3.0));
        factors.push_back(fs_factor());
        if (n > 3) {
            factors.push_back(flat_factor(n - 3));
        }
        s = 0.0;
        break;
    case CurvatureSign::positive:
        if (n < 3) {
            throw parameter_error("positive instance needs dimension >= 3");
        }
        factors.push_back(disk_factor(4.0));
        factors.push_back(fs_factor());
        if (n > 3) {
            factors.push_back(flat_factor(n - 3));
        }
        s = 2.0 * kPi;
        break;
    }
    return {make_product(std::move(factors)), s};
}

void to_json(nlohmann::json& j, const ModelFactor& f) {
    j = nlohmann::json{{"kind", to_string(f.kind)}, {"m_scale", f.m_scale},
                       {"lambda", f.lambda},       {"xi", f.xi},
                       {"scale", f.scale},         {"dim", f.dim}};
}

void from_json(const nlohmann::json& j, ModelFactor& f) {
    f.kind = factor_kind_from_string(j.at("kind").get<std::string>());
    f.m_scale = j.value("m_scale", 1.0);
    f.lambda = j.value("lambda", 2.0);
    f.xi = j.value("xi", 1.0);
    f.scale = j.value("scale", 1.0);
    f.dim = j.value("dim", f.kind == FactorKind::punctured_disk_family ? 2 : 1);
}

void to_json(nlohmann::json& j, const ProductModel& m) {
    j = nlohmann::json{{"factors", m.factors}, {"total_dim", m.total_dim}};
}

void from_json(const nlohmann::json& j, ProductModel& m) {
    std::vector<ModelFactor> factors =
        j.at("factors").get<std::vector<ModelFactor>>();
    ProductModel built = make_product(std::move(factors));
    if (j.contains("total_dim")) {
        const int declared = j.at("total_dim").get<int>();
        if (declared != built.total_dim) {
            throw parameter_error("declared total_dim " +
                                  std::to_string(declared) +
                                  " does not match the factor dimensions");
        }
    }
    m = std::move(built);
}

} // namespace pbk
