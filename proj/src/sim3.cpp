#include "scalefuse/sim3.hpp"

#include <cmath>

namespace scalefuse {
namespace {

constexpr double kSmall = 1e-2;  // switch point for series branches

// Moments m_n = \int_0^1 u^n e^{u*sigma} du, n = 0..max_n.
// Series evaluation for small |sigma|, upward recursion otherwise.
void exp_moments(double sigma, int max_n, double* m) {
    if (std::abs(sigma) < 0.5) {
        for (int n = 0; n <= max_n; ++n) {
            double term = 1.0;  // sigma^k / k!
            double sum = 1.0 / (n + 1.0);
            for (int k = 1; k < 40; ++k) {
                term *= sigma / k;
                const double add = term / (n + k + 1.0);
                sum += add;
                if (std::abs(add) < 1e-18) break;
            }
            m[n] = sum;
        }
    } else {
        double s = std::exp(sigma);
        m[0] = (s - 1.0) / sigma;
        for (int n = 1; n <= max_n; ++n) {
            m[n] = (s - n * m[n - 1]) / sigma;
        }
    }
}

// W = \int_0^1 e^{u*sigma} e^{u*[w]x} du = C*I + A*[w]x + B*[w]x^2.
// Couples translation to rotation and scale in exp/log.
Eigen::Matrix3d calc_w(double sigma, const Eigen::Vector3d& omega) {
    const double theta = omega.norm();
    const Eigen::Matrix3d Omega = skew(omega);
    double A, B, C;
    if (theta < kSmall) {
        // expand e^{u*Omega} in theta; Omega^3 = -theta^2 * Omega
        double m[7];
        exp_moments(sigma, 6, m);
        const double t2 = theta * theta;
        C = m[0];
        A = m[1] - t2 * m[3] / 6.0 + t2 * t2 * m[5] / 120.0;
        B = m[2] / 2.0 - t2 * m[4] / 24.0 + t2 * t2 * m[6] / 720.0;
    } else {
        const double s = std::exp(sigma);
        const double c = sigma * sigma + theta * theta;
        const double sin_t = std::sin(theta);
        const double cos_t = std::cos(theta);
        C = (sigma == 0.0) ? 1.0 : std::expm1(sigma) / sigma;
        A = (s * (sigma * sin_t - theta * cos_t) + theta) / (theta * c);
        B = (C - (s * (sigma * cos_t + theta * sin_t) - sigma) / c) / (theta * theta);
    }
    return C * Eigen::Matrix3d::Identity() + A * Omega + B * Omega * Omega;
}

Eigen::Quaterniond quat_exp(const Eigen::Vector3d& omega) {
    const double theta = omega.norm();
    if (theta < 1e-10) {
        Eigen::Quaterniond q(1.0, 0.5 * omega.x(), 0.5 * omega.y(), 0.5 * omega.z());
        q.normalize();
        return q;
    }
    const double half = 0.5 * theta;
    const double k = std::sin(half) / theta;
    return Eigen::Quaterniond(std::cos(half), k * omega.x(), k * omega.y(), k * omega.z());
}

Eigen::Vector3d quat_log(const Eigen::Quaterniond& q_in) {
    Eigen::Quaterniond q = q_in;
    if (q.w() < 0.0) q.coeffs() *= -1.0;
    const double n = q.vec().norm();
    if (n < 1e-12) {
        return 2.0 * q.vec() / q.w();
    }
    const double angle = 2.0 * std::atan2(n, q.w());
    return q.vec() * (angle / n);
}

}  // namespace

Sim3 Sim3::exp(const Tangent7& xi) {
    const Eigen::Vector3d omega = tangent_omega(xi);
    const Eigen::Vector3d upsilon = tangent_upsilon(xi);
    const double sigma = tangent_sigma(xi);
    const Eigen::Matrix3d W = calc_w(sigma, omega);
    return Sim3(quat_exp(omega), W * upsilon, std::exp(sigma));
}

double Sim3::rotation_angle() const {
    Eigen::Quaterniond q = q_;
    if (q.w() < 0.0) q.coeffs() *= -1.0;
    return 2.0 * std::atan2(q.vec().norm(), q.w());
}

Tangent7 Sim3::log() const {
    const double angle = rotation_angle();
    if (angle > M_PI - 1e-6) {
        throw IllConditionedError("Sim3::log: rotation angle within 1e-6 of pi");
    }
    const Eigen::Vector3d omega = quat_log(q_);
    const double sigma = std::log(s_);
    const Eigen::Matrix3d W = calc_w(sigma, omega);
    const Eigen::Vector3d upsilon = W.partialPivLu().solve(t_);
    return make_tangent(omega, upsilon, sigma);
}

Matrix7d Sim3::adjoint() const {
    Matrix7d ad = Matrix7d::Zero();
    const Eigen::Matrix3d R = rotation();
    ad.block<3, 3>(0, 0) = R;
    ad.block<3, 3>(3, 0) = skew(t_) * R;
    ad.block<3, 3>(3, 3) = s_ * R;
    ad.block<3, 1>(3, 6) = -t_;
    ad(6, 6) = 1.0;
    return ad;
}

Matrix7d algebra_adjoint(const Tangent7& xi) {
    Matrix7d ad = Matrix7d::Zero();
    const Eigen::Vector3d omega = tangent_omega(xi);
    const Eigen::Vector3d upsilon = tangent_upsilon(xi);
    const double sigma = tangent_sigma(xi);
    ad.block<3, 3>(0, 0) = skew(omega);
    ad.block<3, 3>(3, 0) = skew(upsilon);
    ad.block<3, 3>(3, 3) = skew(omega) + sigma * Eigen::Matrix3d::Identity();
    ad.block<3, 1>(3, 6) = -upsilon;
    return ad;
}

Matrix7d right_jacobian_inverse_unchecked(const Tangent7& xi) {
    const Matrix7d ad = algebra_adjoint(xi);
    const Matrix7d ad2 = ad * ad;
    const Matrix7d ad4 = ad2 * ad2;
    const Matrix7d ad6 = ad4 * ad2;
    return Matrix7d::Identity() + 0.5 * ad + (1.0 / 12.0) * ad2 - (1.0 / 720.0) * ad4 +
           (1.0 / 30240.0) * ad6;
}

Matrix7d right_jacobian_inverse(const Tangent7& xi) {
    if (xi.norm() > 1.0) {
        throw IllConditionedError("right_jacobian_inverse: ||xi|| beyond series validity radius 1");
    }
    return right_jacobian_inverse_unchecked(xi);
}

}  // namespace scalefuse
