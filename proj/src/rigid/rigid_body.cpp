#include "ebfsi/rigid_body.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace ebfsi {

Mat3 hat(const Vec3& x) {
    Mat3 m;
    m << 0.0, -x.z(), x.y(),
         x.z(), 0.0, -x.x(),
        -x.y(), x.x(), 0.0;
    return m;
}

Vec3 vee(const Mat3& m) {
    return {0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1))};
}

Mat3 RigidBody::D_from_principal_moments(double I1, double I2, double I3) {
    const double h = 0.5 * (I1 + I2 + I3);
    return Vec3(h - I1, h - I2, h - I3).asDiagonal();
}

void RigidBody::validate() const {
    if (fixed) return;
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("rigid body: mass must be positive");
    if ((D - D.transpose()).norm() > 1e-12 * D.norm())
        throw std::invalid_argument("rigid body: D must be symmetric");
    const Eigen::SelfAdjointEigenSolver<Mat3> es(D);
    const Vec3 d = es.eigenvalues();
    if (!(d(0) + d(1) > 0.0 && d(1) + d(2) > 0.0 && d(0) + d(2) > 0.0))
        throw std::invalid_argument("rigid body: pairwise sums of D eigenvalues must be positive");
    if (!(d(0) > 0.0)) throw std::invalid_argument("rigid body: D must be positive definite");
}

double RigidBody::rotational_energy() const {
    if (fixed || lock_rotation) return 0.0;
    return 0.5 * (P * D.inverse() * P.transpose()).trace();
}

Vec3 RigidBody::omega() const {
    if (fixed || lock_rotation) return Vec3::Zero();
    return vee(P * D.inverse() * Q.transpose());
}

double RigidBody::angle() const { return std::atan2(Q(1, 0), Q(0, 0)); }

Vec2 RigidBody::to_world(const Vec2& x0) const {
    const Vec3 r = Q * Vec3(x0.x - X0.x(), x0.y - X0.y(), 0.0);
    return {X.x() + r.x(), X.y() + r.y()};
}

LoadSet effective_loads(const RigidBody& body, const LoadSet& loads) {
    LoadSet e = loads;
    if (body.planar) {
        e.force.z() = 0.0;
        e.torque.x() = 0.0;
        e.torque.y() = 0.0;
    }
    if (body.hinged) e.force.setZero();
    if (body.lock_rotation) e.torque.setZero();
    return e;
}

namespace {

// Basis of symmetric 3x3 matrices.
std::array<Mat3, 6> symmetric_basis() {
    std::array<Mat3, 6> b;
    int k = 0;
    for (int r = 0; r < 3; ++r) {
        for (int c = r; c < 3; ++c) {
            Mat3 m = Mat3::Zero();
            m(r, c) = 1.0;
            m(c, r) = 1.0;
            b[k++] = m;
        }
    }
    return b;
}

Eigen::Matrix<double, 6, 1> sym_to_vec(const Mat3& m) {
    Eigen::Matrix<double, 6, 1> v;
    v << m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2);
    return v;
}

}  // namespace

RigidBody rattle_advance_positions(RigidBody b, const LoadSet& raw, double dt) {
    if (b.fixed) {
        b.V_half.setZero();
        b.P_half.setZero();
        return b;
    }
    const LoadSet l = effective_loads(b, raw);
    if (!l.force.allFinite() || !l.torque.allFinite()) throw IntegratorError("non-finite loads");
    b.V_half = b.V + (dt / (2.0 * b.mass)) * l.force;
    if (!b.hinged) b.X = b.X + dt * b.V_half;
    if (b.lock_rotation) {
        b.P_half.setZero();
        return b;
    }

    const Mat3 Dinv = b.D.inverse();
    const Mat3 Phat = b.P + (dt / 4.0) * hat(l.torque) * b.Q;
    const Mat3 A = b.Q + dt * Phat * Dinv;
    const Mat3 B = b.Q * Dinv;
    const double c = 0.5 * dt * dt;  // Q1 = A + c * Lambda * B
    static const std::array<Mat3, 6> basis = symmetric_basis();

    Mat3 L = Mat3::Zero();
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        const Mat3 Q1 = A + c * L * B;
        const Mat3 F = Q1.transpose() * Q1 - Mat3::Identity();
        if (F.norm() <= 1e-14) {
            converged = true;
            break;
        }
        Eigen::Matrix<double, 6, 6> J;
        for (int k = 0; k < 6; ++k) {
            const Mat3 dQ = c * basis[k] * B;
            J.col(k) = sym_to_vec(Q1.transpose() * dQ + dQ.transpose() * Q1);
        }
        const Eigen::Matrix<double, 6, 1> step = J.fullPivLu().solve(-sym_to_vec(F));
        Mat3 dL = Mat3::Zero();
        for (int k = 0; k < 6; ++k) dL += step(k) * basis[k];
        L += dL;
        if (dL.norm() <= 1e-12 * std::max(1.0, L.norm())) {
            const Mat3 Qc = A + c * L * B;
            if ((Qc.transpose() * Qc - Mat3::Identity()).norm() <= 1e-12) {
                converged = true;
                break;
            }
        }
    }
    if (!converged) throw IntegratorError("RATTLE position multiplier did not converge in 50 iterations");
    b.multipliers.Lambda = 0.5 * (L + L.transpose());
    b.P_half = Phat + (dt / 2.0) * b.multipliers.Lambda * b.Q;
    b.Q = b.Q + dt * b.P_half * Dinv;
    return b;
}

RigidBody rattle_finalize_velocities(RigidBody b, const LoadSet& raw, double dt) {
    if (b.fixed) {
        b.V.setZero();
        b.P.setZero();
        return b;
    }
    const LoadSet l = effective_loads(b, raw);
    if (!l.force.allFinite() || !l.torque.allFinite()) throw IntegratorError("non-finite loads");
    b.V = b.V_half + (dt / (2.0 * b.mass)) * l.force;
    if (b.lock_rotation) {
        b.P.setZero();
        return b;
    }
    const Mat3 Dinv = b.D.inverse();
    const Mat3 K = b.P_half + (dt / 4.0) * hat(l.torque) * b.Q;
    // Constraint: Q^T P D^-1 + D^-1 P^T Q = 0 with P = K + dt/2 Lt Q.
    // With Y = Q^T Lt Q: Y D^-1 + D^-1 Y = -(2/dt) (Q^T K D^-1 + D^-1 K^T Q).
    const Mat3 C = -(2.0 / dt) * (b.Q.transpose() * K * Dinv + Dinv * K.transpose() * b.Q);
    const Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (Dinv + Dinv.transpose()));
    const Mat3 U = es.eigenvectors();
    const Vec3 s = es.eigenvalues();
    Mat3 Ch = U.transpose() * C * U;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) Ch(r, c) /= (s(r) + s(c));
    const Mat3 Y = U * Ch * U.transpose();
    const Mat3 Lt = b.Q * Y * b.Q.transpose();
    b.multipliers.LambdaTilde = 0.5 * (Lt + Lt.transpose());
    b.P = K + (dt / 2.0) * b.multipliers.LambdaTilde * b.Q;
    return b;
}

double orthogonality_residual(const RigidBody& b) {
    return (b.Q.transpose() * b.Q - Mat3::Identity()).norm();
}

double hidden_constraint_residual(const RigidBody& b) {
    const Mat3 Dinv = b.D.inverse();
    return (b.Q.transpose() * b.P * Dinv + Dinv * b.P.transpose() * b.Q).norm();
}

Vec2 face_velocity(const RigidBody& b, const Vec2& x0) {
    if (b.fixed) return {};
    Vec3 v = b.V_half;
    if (!b.lock_rotation) v += b.P_half * b.D.inverse() * Vec3(x0.x - b.X0.x(), x0.y - b.X0.y(), 0.0);
    return {v.x(), v.y()};
}

Vec2 face_velocity(const RigidBody& b, const BoundaryFace& f) { return face_velocity(b, f.X_F0); }

LoadSet accumulate_pressure_loads(std::span<const BoundaryFace> faces, const RigidBody& b) {
    LoadSet l;
    for (const BoundaryFace& f : faces) {
        if (!f.has_pressures()) {
            std::ostringstream os;
            os << "boundary face on edge " << f.edge << " of body " << f.body_id << " has no pressures";
            throw std::invalid_argument(os.str());
        }
        const Vec3 F(-f.p_bar_x * f.S * f.n.x, -f.p_bar_y * f.S * f.n.y, 0.0);
        l.force += F;
        l.torque += F.cross(b.X - Vec3(f.X_F.x, f.X_F.y, 0.0));
    }
    return l;
}

}  // namespace ebfsi
