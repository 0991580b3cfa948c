#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <vector>

#include "mzop/errors.hpp"
#include "mzop/rng.hpp"

namespace mzop {

struct ModelParams {
    double temperature = 1.0;  // variance of the canonical density
    int dimension = 4;
    int resolved_count = 2;

    void validate() const {
        if (!(temperature > 0.0)) throw ContractViolation("ModelParams: temperature must be > 0");
        if (!(resolved_count > 0 && resolved_count < dimension))
            throw ContractViolation("ModelParams: need 0 < resolved_count < dimension");
    }
};

/// Full n-dimensional state.
struct PhasePoint {
    std::vector<double> coords;
};

/// The m resolved components.
struct ResolvedPoint {
    std::vector<double> coords;
};

/// A model system: full vector field and energy, the resolved/unresolved
/// split, the closed-form conditional-expectation closure with an independent
/// quadrature oracle, and exact samplers for the canonical density and its
/// conditional given resolved values.
class ModelSystem {
  public:
    virtual ~ModelSystem() = default;

    virtual const ModelParams& params() const = 0;
    int dimension() const { return params().dimension; }
    int resolved_count() const { return params().resolved_count; }

    virtual void vector_field(std::span<const double> x, std::span<double> out) const = 0;
    virtual double hamiltonian(std::span<const double> x) const = 0;
    virtual void closure(std::span<const double> resolved, std::span<double> out) const = 0;
    virtual void closure_quadrature(std::span<const double> resolved, double abs_tol,
                                    std::span<double> out) const = 0;
    virtual PhasePoint sample_equilibrium(RngState rng) const = 0;
    virtual PhasePoint sample_conditional(RngState rng, const ResolvedPoint& r) const = 0;

    // Vector conveniences.
    std::vector<double> vector_field(const PhasePoint& p) const {
        check_dim(p);
        std::vector<double> out(static_cast<std::size_t>(dimension()));
        vector_field(p.coords, out);
        return out;
    }
    double hamiltonian(const PhasePoint& p) const {
        check_dim(p);
        return hamiltonian(std::span<const double>(p.coords));
    }
    std::vector<double> closure(const ResolvedPoint& r) const {
        check_resolved(r);
        std::vector<double> out(static_cast<std::size_t>(resolved_count()));
        closure(r.coords, out);
        return out;
    }
    std::vector<double> closure_quadrature(const ResolvedPoint& r, double abs_tol) const {
        check_resolved(r);
        std::vector<double> out(static_cast<std::size_t>(resolved_count()));
        closure_quadrature(r.coords, abs_tol, out);
        return out;
    }

  protected:
    void check_dim(const PhasePoint& p) const {
        if (static_cast<int>(p.coords.size()) != dimension())
            throw ContractViolation("PhasePoint dimension mismatch");
    }
    void check_resolved(const ResolvedPoint& r) const {
        if (static_cast<int>(r.coords.size()) != resolved_count())
            throw ContractViolation("ResolvedPoint dimension mismatch");
    }
};

/// Acceptance probability of the equilibrium rejection step for the first
/// position coordinate: proposals z ~ N(0,T) are accepted with probability
/// (1+z^2)^{-1/2}, which turns the Gaussian proposal into the marginal
/// density ~ exp(-z^2/2T) (1+z^2)^{-1/2}.
inline double rejection_acceptance(double z) { return 1.0 / std::sqrt(1.0 + z * z); }

/// The built-in 4D system: two unit-frequency oscillators with a biquadratic
/// coupling in the flow,
///   dx1 = -x2 - x2 x4^2,  dx2 = x1,  dx3 = -x4 - x4 x2^2,  dx4 = x3,
/// energy H = (x1^2+x2^2+x3^2+x4^2+x1^2 x3^2)/2, resolved pair (x1,x2).
/// The closure of the first component is -x2 (1 + T/(1+x2^2)); at T=1 this is
/// -x2 - x2/(1+x2^2). The second resolved component is closed exactly (R2=x1).
class CoupledOscillators4D final : public ModelSystem {
  public:
    explicit CoupledOscillators4D(double temperature = 1.0);

    const ModelParams& params() const override { return params_; }

    void vector_field(std::span<const double> x, std::span<double> out) const override;
    double hamiltonian(std::span<const double> x) const override;
    void closure(std::span<const double> resolved, std::span<double> out) const override;
    void closure_quadrature(std::span<const double> resolved, double abs_tol,
                            std::span<double> out) const override;
    PhasePoint sample_equilibrium(RngState rng) const override;
    PhasePoint sample_conditional(RngState rng, const ResolvedPoint& r) const override;

    using ModelSystem::closure;
    using ModelSystem::closure_quadrature;
    using ModelSystem::hamiltonian;
    using ModelSystem::vector_field;

  private:
    ModelParams params_;
};

}  // namespace mzop
