#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>

namespace scalefuse {

using Vector7d = Eigen::Matrix<double, 7, 1>;
using Matrix7d = Eigen::Matrix<double, 7, 7>;

// Tangent vector of Sim(3), ordered (omega, upsilon, sigma):
// rotation (rad), translation, log-scale.
using Tangent7 = Vector7d;

inline Eigen::Vector3d tangent_omega(const Tangent7& xi) { return xi.head<3>(); }
inline Eigen::Vector3d tangent_upsilon(const Tangent7& xi) { return xi.segment<3>(3); }
inline double tangent_sigma(const Tangent7& xi) { return xi(6); }

inline Tangent7 make_tangent(const Eigen::Vector3d& omega, const Eigen::Vector3d& upsilon,
                             double sigma) {
    Tangent7 xi;
    xi << omega, upsilon, sigma;
    return xi;
}

inline Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
    Eigen::Matrix3d m;
    m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
    return m;
}

/// Thrown when Log is requested for a rotation at or near angle pi,
/// or when a series evaluation is outside its validity radius.
class IllConditionedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A similarity transform T = (R, t, s) acting on points as p -> s*R*p + t.
///
/// The rotation is stored as a unit quaternion and re-normalized after every
/// composition; scale is strictly positive.
class Sim3 {
public:
    Sim3() : q_(Eigen::Quaterniond::Identity()), t_(Eigen::Vector3d::Zero()), s_(1.0) {}

    Sim3(const Eigen::Quaterniond& q, const Eigen::Vector3d& t, double s)
        : q_(q.normalized()), t_(t), s_(s) {
        check_scale();
    }

    Sim3(const Eigen::Matrix3d& R, const Eigen::Vector3d& t, double s)
        : q_(Eigen::Quaterniond(R).normalized()), t_(t), s_(s) {
        check_scale();
    }

    static Sim3 identity() { return Sim3(); }

    const Eigen::Quaterniond& quaternion() const { return q_; }
    Eigen::Matrix3d rotation() const { return q_.toRotationMatrix(); }
    const Eigen::Vector3d& translation() const { return t_; }
    double scale() const { return s_; }

    // a * b acts as a after b: R = Ra*Rb, t = sa*Ra*tb + ta, s = sa*sb.
    Sim3 operator*(const Sim3& rhs) const {
        Eigen::Quaterniond q = q_ * rhs.q_;
        q.normalize();
        return Sim3(q, s_ * (q_ * rhs.t_) + t_, s_ * rhs.s_);
    }

    Sim3 inverse() const {
        Eigen::Quaterniond qi = q_.conjugate();
        return Sim3(qi, qi * t_ * (-1.0 / s_), 1.0 / s_);
    }

    Eigen::Vector3d act(const Eigen::Vector3d& p) const { return s_ * (q_ * p) + t_; }

    /// 4x4 homogeneous representation [s*R, t; 0, 1].
    Eigen::Matrix4d matrix() const {
        Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
        m.topLeftCorner<3, 3>() = s_ * rotation();
        m.topRightCorner<3, 1>() = t_;
        return m;
    }

    static Sim3 exp(const Tangent7& xi);

    /// Inverse of exp. Throws IllConditionedError when the rotation angle is
    /// within 1e-6 of pi, where the rotation axis is not recoverable stably.
    Tangent7 log() const;

    /// Rotation angle in radians, in [0, pi].
    double rotation_angle() const;

    /// Group adjoint, ordering (omega, upsilon, sigma):
    ///   [ R         0    0 ]
    ///   [ [t]x R    s R  -t]
    ///   [ 0         0    1 ]
    Matrix7d adjoint() const;

    bool is_approx(const Sim3& other, double tol = 1e-12) const {
        return (rotation() - other.rotation()).norm() < tol &&
               (t_ - other.t_).norm() < tol && std::abs(s_ - other.s_) < tol;
    }

private:
    void check_scale() const {
        if (!(s_ > 0.0) || !std::isfinite(s_)) {
            throw std::invalid_argument("Sim3: scale must be positive and finite");
        }
    }

    Eigen::Quaterniond q_;
    Eigen::Vector3d t_;
    double s_;
};

/// Lie algebra adjoint ad_xi, ordering (omega, upsilon, sigma):
///   [ [w]x      0            0  ]
///   [ [u]x      [w]x + sig*I -u ]
///   [ 0         0            0  ]
Matrix7d algebra_adjoint(const Tangent7& xi);

/// Inverse right Jacobian via the Bernoulli series,
///   I + 1/2 ad + 1/12 ad^2 - 1/720 ad^4 + 1/30240 ad^6,
/// valid for ||xi|| <= 1. Throws IllConditionedError beyond that radius.
Matrix7d right_jacobian_inverse(const Tangent7& xi);

/// Same truncated series without the radius check. Used where an approximate
/// Jacobian on large residuals is acceptable (LM damping absorbs the error).
Matrix7d right_jacobian_inverse_unchecked(const Tangent7& xi);

}  // namespace scalefuse
