#pragma once

#include "pbk/bergman_kernel.hpp"
#include "pbk/radial_potential.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace pbk {

enum class FactorKind { punctured_disk_family, flat, fubini_study };

std::string to_string(FactorKind k);
FactorKind factor_kind_from_string(const std::string& s);

/// One factor of a product model. `scale` is the constant multiplying the
/// factor metric; level m of the scaled factor is level scale * m of the
/// unscaled one. `dim` > 1 is only meaningful for the flat kind.
struct ModelFactor {
    FactorKind kind = FactorKind::flat;
    double m_scale = 1.0;  // family coefficient m of the potential
    double lambda = 2.0;   // family exponent (disk kind only)
    double xi = 1.0;       // family coefficient (disk kind only)
    double scale = 1.0;    // metric scaling constant c
    int dim = 1;

    RadialPotential potential() const;
    /// Scalar curvature contributed per unit of this factor before the 1/c
    /// scaling division.
    double base_scalar_curvature() const;
};

struct ProductModel {
    std::vector<ModelFactor> factors;
    int total_dim = 0;
    /// Smallest level at which every factor kernel converges.
    int min_level() const;
};

ModelFactor disk_factor(double m_scale, double scale = 1.0);
ModelFactor flat_factor(int dim, double scale = 1.0);
ModelFactor fs_factor(double scale = 1.0);

ProductModel make_product(std::vector<ModelFactor> factors);

/// Scalar curvature of the product: sum over factors of s_alpha / c_alpha.
double model_scalar_curvature(const ProductModel& model);

/// Product of the per-factor kernels, each queried at its effective level
/// scale * m_scale * m (which must land on a positive integer). Disk factors
/// must carry lambda = 2, xi = 1 for the kernel route. Tail bounds propagate
/// through the product by first-order expansion.
KernelEvaluation model_kernel(const ProductModel& model, int m, double r,
                              double tol = 1e-12);

/// Expected constant value of model_kernel at level m.
double expected_constant(const ProductModel& model, int m);

enum class CurvatureSign { negative, zero, positive };

struct WitnessInstance {
    ProductModel model;
    double scalar_curvature;
};

/// Catalogued complex-dimension-n witnesses: negative (n >= 2, s = -24 pi),
/// zero (n >= 3, s = 0), positive (n >= 3, s = 2 pi).
WitnessInstance witness_instance(int n, CurvatureSign sign);

void to_json(nlohmann::json& j, const ModelFactor& f);
void from_json(const nlohmann::json& j, ModelFactor& f);
void to_json(nlohmann::json& j, const ProductModel& m);
void from_json(const nlohmann::json& j, ProductModel& m);

} // namespace pbk
