// Dense complex-matrix kernels shared by every rate expression:
// log-det rates, conditional (Schur-complement) covariances, PD checks.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace comp {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// 0.5*(A + A^H); all covariances pass through this before factorization.
CMat hermitize(const CMat& a);

// log2|I + noise^-1 * sig| in bits. noise must be Hermitian PD
// (smallest eigenvalue > 1e-12); sig Hermitian PSD. Throws
// std::invalid_argument on shape mismatch, std::runtime_error if noise
// is not PD. Returns exactly 0 for a zero signal matrix.
double log2_det_rate(const CMat& noise_cov, const CMat& sig_cov);

// joint_a - cross_ab * joint_b^-1 * cross_ab^H.
// Covariance of A conditioned on B when cross_ab = E{A B^H}.
CMat conditional_covariance(const CMat& joint_a, const CMat& cross_ab,
                            const CMat& joint_b);

// Eigenvalues of the Hermitian part, ascending.
RVec herm_eigenvalues(const CMat& a);

// Upper concave envelope of y over sorted x (time-sharing closure).
// Returns pointwise max(y, envelope) like-sized to the inputs.
std::vector<double> upper_concave_envelope(const std::vector<double>& x,
                                           const std::vector<double>& y);

// Running maximum; used to absorb sub-1e-12 grid noise before
// monotonicity-sensitive post-processing.
std::vector<double> running_max(std::vector<double> v);

}  // namespace comp
