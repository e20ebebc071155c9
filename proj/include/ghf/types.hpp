#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace ghf {

using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using SparseMat = Eigen::SparseMatrix<double>;

// Real coefficient vectors on vertices / oriented edges / faces.
// Cochain1 signs follow the global edge orientation (i, j) with i < j.
using Cochain0 = Eigen::VectorXd;
using Cochain1 = Eigen::VectorXd;
using Cochain2 = Eigen::VectorXd;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define GHF_DEFINE_ERROR(Name)                                                \
    struct Name : Error {                                                     \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {}    \
    }

GHF_DEFINE_ERROR(NonManifold);
GHF_DEFINE_ERROR(NonOrientable);
GHF_DEFINE_ERROR(DegenerateFace);
GHF_DEFINE_ERROR(FrameDegenerate);
GHF_DEFINE_ERROR(NonPositiveWeight);
GHF_DEFINE_ERROR(NotClosed);
GHF_DEFINE_ERROR(Disconnected);
GHF_DEFINE_ERROR(OpenLoop);
GHF_DEFINE_ERROR(SolverDivergence);
GHF_DEFINE_ERROR(EigensolverStall);
GHF_DEFINE_ERROR(FactorizationFailure);
GHF_DEFINE_ERROR(SelfIntersection);
GHF_DEFINE_ERROR(NoSignChange);
GHF_DEFINE_ERROR(StepFailure);
GHF_DEFINE_ERROR(IOError);

#undef GHF_DEFINE_ERROR

} // namespace ghf
