#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <array>
#include <utility>
#include <vector>

namespace designbench::topopt {

/// Regular grid of unit square elements. Nodes are numbered column-major
/// (node = col*(nely+1) + row, row 0 at the top), elements column-major
/// (el = ely + elx*nely); two dofs per node for elasticity. This matches the
/// classic 88-line ordering so reference runs compare index-exact.
struct GridMesh {
    int nelx = 1;
    int nely = 1;

    int n_nodes() const { return (nelx + 1) * (nely + 1); }
    int n_elems() const { return nelx * nely; }
    int n_dofs() const { return 2 * n_nodes(); }

    int node(int col, int row) const { return col * (nely + 1) + row; }

    /// Element corner nodes in [LL, LR, UR, UL] order.
    std::array<int, 4> element_nodes(int elx, int ely) const {
        const int n1 = node(elx, ely);      // upper-left
        const int n2 = node(elx + 1, ely);  // upper-right
        return {n1 + 1, n2 + 1, n2, n1};
    }

    /// The 8 displacement dofs of an element, interleaved (x, y) per node in
    /// element_nodes order.
    std::array<int, 8> element_dofs(int elx, int ely) const {
        const auto n = element_nodes(elx, ely);
        return {2 * n[0], 2 * n[0] + 1, 2 * n[1], 2 * n[1] + 1,
                2 * n[2], 2 * n[2] + 1, 2 * n[3], 2 * n[3] + 1};
    }
};

/// Plane-stress bilinear quad stiffness for a unit square with E = 1.
Eigen::Matrix<double, 8, 8> elastic_element_stiffness(double nu);

/// Conduction matrix of the bilinear quad with unit conductivity; rows sum
/// to zero.
Eigen::Matrix4d thermal_element_stiffness();

/// Maps nodal temperature excess to the element nodal forces produced by
/// isotropic thermal expansion (plane stress, E = 1).
Eigen::Matrix<double, 8, 4> thermoelastic_coupling_matrix(double nu, double alpha);

struct ElasticModel {
    double E0 = 1.0;
    double Emin = 1e-9;
    double nu = 0.3;
    double penal = 3.0;
    Eigen::Matrix<double, 8, 8> ke = elastic_element_stiffness(0.3);

    double young(double x) const;        // Emin + x^p (E0 - Emin)
    double young_deriv(double x) const;  // p x^(p-1) (E0 - Emin)
};

struct ThermalModel {
    double kmax = 1.0;
    double kmin = 1e-3;
    double penal = 3.0;
    double heat_source = 1e-2;  // per element, uniform
    Eigen::Matrix4d ke = thermal_element_stiffness();

    double conductivity(double x) const;
    double conductivity_deriv(double x) const;
};

struct CouplingModel {
    double alpha_th = 1.0;
    double t_ref = 0.0;
    double nu = 0.3;
    Eigen::Matrix<double, 8, 4> ce = thermoelastic_coupling_matrix(0.3, 1.0);
};

struct BoundaryConditions {
    std::vector<int> fixed_dofs;               // elastic supports, sorted
    std::vector<std::pair<int, double>> loads; // (dof, magnitude)
    std::vector<int> heatsink_nodes;           // thermal Dirichlet T = 0
};

/// Densities use the (nely, nelx) layout: rho(ely, elx).
using DensityField = Eigen::ArrayXXd;

/// Assembles the full penalized stiffness (no boundary conditions applied).
Eigen::SparseMatrix<double> assemble_elastic(const DensityField& rho, const ElasticModel& model,
                                             const GridMesh& mesh);
Eigen::SparseMatrix<double> assemble_thermal(const DensityField& rho, const ThermalModel& model,
                                             const GridMesh& mesh);

/// Solves K(rho) U = F with the bc loads. Throws SimulationError on a
/// singular reduced system or an unconverged residual.
Eigen::VectorXd solve_elastic(const DensityField& rho, const ElasticModel& model,
                              const BoundaryConditions& bc, const GridMesh& mesh);

/// Same, with an explicit global load vector (used by the coupled problem).
Eigen::VectorXd solve_elastic_with_load(const DensityField& rho, const ElasticModel& model,
                                        const BoundaryConditions& bc, const GridMesh& mesh,
                                        const Eigen::VectorXd& load);

/// Solves the penalized conduction system with the model's uniform source;
/// T = 0 exactly on sink nodes.
Eigen::VectorXd solve_thermal(const DensityField& rho, const ThermalModel& model,
                              const BoundaryConditions& bc, const GridMesh& mesh);

/// Consistent load vector of the uniform heat source.
Eigen::VectorXd thermal_load(const ThermalModel& model, const GridMesh& mesh);

struct ScalarObjective {
    double value = 0.0;
    DensityField sensitivity;  // d value / d rho, same layout as rho
};

/// Structural compliance F^T U and its SIMP sensitivity (non-positive).
ScalarObjective compliance_structural(const DensityField& rho, const ElasticModel& model,
                                      const BoundaryConditions& bc, const GridMesh& mesh);

/// Thermal compliance F_h^T T and its sensitivity.
ScalarObjective compliance_thermal(const DensityField& rho, const ThermalModel& model,
                                   const BoundaryConditions& bc, const GridMesh& mesh);

struct ThermoelasticObjectives {
    double total = 0.0;
    double thermal = 0.0;
    double structural = 0.0;
    DensityField sensitivity;  // d total / d rho
};

/// One-way coupled problem: thermal solve, thermal-expansion loads
/// f_e = x^p Ce (T_e - T_ref) added to the external loads, elastic solve,
/// adjoint sensitivity accumulation over both physics.
ThermoelasticObjectives thermoelastic_objectives(const DensityField& rho,
                                                 const ElasticModel& emodel,
                                                 const ThermalModel& tmodel,
                                                 const CouplingModel& cmodel,
                                                 const BoundaryConditions& bc,
                                                 const GridMesh& mesh);

}  // namespace designbench::topopt
