#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>

#include "ebfsi/cut_cell.hpp"
#include "ebfsi/geometry.hpp"

namespace ebfsi {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// j(x) * y == x cross y.
Mat3 hat(const Vec3& x);
/// Inverse of hat on the skew part of m.
Vec3 vee(const Mat3& m);

struct LoadSet {
    Vec3 force = Vec3::Zero();
    Vec3 torque = Vec3::Zero();
};

struct RattleMultipliers {
    Mat3 Lambda = Mat3::Zero();
    Mat3 LambdaTilde = Mat3::Zero();
};

class IntegratorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rigid body in the RATTLE formulation: Q' = P D^-1, material points move
/// as x = X + Q (x0 - X0).
struct RigidBody {
    double mass = 1.0;
    Mat3 D = Mat3::Identity();  // symmetric, integral of r r^T dm in the reference frame
    Vec3 X = Vec3::Zero();
    Vec3 X0 = Vec3::Zero();
    Mat3 Q = Mat3::Identity();
    Vec3 V = Vec3::Zero();
    Mat3 P = Mat3::Zero();
    Vec3 V_half = Vec3::Zero();
    Mat3 P_half = Mat3::Zero();
    RattleMultipliers multipliers;

    bool planar = true;          // motion in the x-y plane, rotation about z
    bool fixed = false;          // infinite mass: loads recorded, no motion
    bool lock_rotation = false;  // translation only
    bool hinged = false;         // X is a fixed pivot; only the torque about it acts

    /// D from principal moments: d_i = (I1 + I2 + I3)/2 - I_i.
    static Mat3 D_from_principal_moments(double I1, double I2, double I3);

    /// Throws std::invalid_argument when mass or D are not admissible.
    void validate() const;

    double translational_energy() const { return 0.5 * mass * V.squaredNorm(); }
    double rotational_energy() const;
    double kinetic_energy() const { return translational_energy() + rotational_energy(); }
    /// Spatial angular velocity (Q' Q^T = hat(omega)).
    Vec3 omega() const;
    /// Rotation angle about z (planar bodies).
    double angle() const;

    /// World position of a reference-frame point.
    Vec2 to_world(const Vec2& x0) const;
};

/// First half of a RATTLE step: V_half, X^{n+1}, P_half, Q^{n+1}.
RigidBody rattle_advance_positions(RigidBody body, const LoadSet& loads, double dt);

/// Second half: V^{n+1}, P^{n+1}.
RigidBody rattle_finalize_velocities(RigidBody body, const LoadSet& loads_new, double dt);

/// Frobenius norm of Q^T Q - I.
double orthogonality_residual(const RigidBody& body);
/// Frobenius norm of Q^T P D^-1 + D^-1 P^T Q.
double hidden_constraint_residual(const RigidBody& body);

/// Half-step velocity of the material point whose initial position is x0.
Vec2 face_velocity(const RigidBody& body, const Vec2& x0);
Vec2 face_velocity(const RigidBody& body, const BoundaryFace& face);

/// Pressure force and torque about X (faces must carry p_bar_x, p_bar_y).
LoadSet accumulate_pressure_loads(std::span<const BoundaryFace> faces, const RigidBody& body);

/// Loads actually seen by the integrator (planar projection, hinge and lock rules).
LoadSet effective_loads(const RigidBody& body, const LoadSet& loads);

}  // namespace ebfsi
