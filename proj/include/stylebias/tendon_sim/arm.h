// Copyright 2026 The StyleBias Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// One-joint arm driven by three tendons (two flexors, one extensor).
//
// Angles are in radians with theta = 0 hanging straight down; the task
// posture theta = -pi/2 is horizontal and gravity loaded. A muscle produces
// tension only while its stretch (path length minus commanded length) is
// positive.

#ifndef STYLEBIAS_TENDON_SIM_ARM_H_
#define STYLEBIAS_TENDON_SIM_ARM_H_

#include <numbers>

#include <Eigen/Dense>

namespace stylebias {

constexpr int kNumMuscles = 3;
using MuscleVector = Eigen::Matrix<double, kNumMuscles, 1>;

struct ArmGeometry {
  double joint_radius = 0.04;                             // r [m]
  MuscleVector moment_arms{0.04, -0.04, 0.04};            // a [m]
  MuscleVector rest_path_lengths{0.30, 0.30, 0.30};       // l0 [m]
  double inertia = 0.05;                                  // I [kg m^2]
  double mass = 1.0;                                      // m [kg]
  double com_distance = 0.3;                              // l_c [m]
  double joint_damping = 0.1;                             // b [N m s/rad]

  // moment arms (+r, -r, +r) with the remaining fields at their defaults
  static ArmGeometry WithRadius(double r);

  static constexpr double kMinTheta = -std::numbers::pi / 2 - 0.2;
  static constexpr double kMaxTheta = 0.2;
};

struct MuscleParams {
  double elastic_scale = 20.0;  // c [N]
  double elastic_rate = 50.0;   // k [1/m]
  double viscous = 50.0;        // mu_v [N s/m]
  double coulomb = 1.0;         // mu_c [N]
};

struct SimSettings {
  double gravity = 9.81;   // [m/s^2]
  double slew_rate = 0.1;  // max |d l_cmd/dt| [m/s]
  double substep = 0.01;   // integrator step [s]
};

struct ArmState {
  double theta = 0;
  double theta_dot = 0;
  MuscleVector l_cmd = MuscleVector::Zero();       // commanded lengths [m]
  MuscleVector l_cmd_rate = MuscleVector::Zero();  // last slew velocity [m/s]
  double time = 0;

  bool operator==(const ArmState&) const = default;
};

// Rest state at theta = 0 with every muscle exactly unstretched.
ArmState RestState(const ArmGeometry& geom);

// l_path = l0 - a * theta. Throws RangeError outside
// [kMinTheta, kMaxTheta].
MuscleVector PathLengths(double theta, const ArmGeometry& geom);

// f = max(0, c (exp(k d) - 1) + mu_v d_dot + mu_c sign(d_dot)) for d > 0,
// zero when slack.
double MuscleTension(double stretch, double stretch_rate,
                     const MuscleParams& mp);

// Static inverse of the elastic law: stretch giving tension f at rest.
double ElasticStretch(double tension, const MuscleParams& mp);

// Target muscle lengths realizing (theta_ref, f_ref) statically:
// l_ref = l0 - a theta_ref - ElasticStretch(f_ref). theta_ref is a virtual
// reference and may lie outside the joint's operating range. Throws
// SpecificationError on negative tension.
MuscleVector BodyImage(double theta_ref, const MuscleVector& f_ref,
                       const ArmGeometry& geom, const MuscleParams& mp);

// Tensions the muscles exert in `state`.
MuscleVector MuscleTensions(const ArmState& state, const ArmGeometry& geom,
                            const MuscleParams& mp);

struct SimStepResult {
  ArmState state;
  MuscleVector tension;  // sampled at the end of the control period
};

// Advances one control period. l_cmd slews toward l_ref at
// settings.slew_rate while
//   I theta_ddot = sum a_i f_i - b theta_dot - m g l_c sin(theta)
// is integrated by semi-implicit Euler. Throws SimulationFault on a
// non-finite state.
SimStepResult SimStep(const ArmState& state, const MuscleVector& l_ref,
                      double dt_ctrl, const ArmGeometry& geom,
                      const MuscleParams& mp, const SimSettings& settings = {});

// Kinetic + gravitational + elastic energy (friction excluded).
double MechanicalEnergy(const ArmState& state, const ArmGeometry& geom,
                        const MuscleParams& mp,
                        const SimSettings& settings = {});

// Feedback demonstrator that drifts the reference angle and tension:
//   theta_ref <- theta_ref + beta (theta_task - theta)
//   f_ref     <- f_ref + beta (f_style - f_ref)
struct DemoControllerState {
  double theta_ref = 0;
  MuscleVector f_ref = MuscleVector::Zero();
  double theta_task = -std::numbers::pi / 2;
  double f_style = 100.0;
  double beta = 0.1;
};

struct DemoControllerResult {
  DemoControllerState ctrl;
  MuscleVector l_ref;
};

DemoControllerResult DemoControllerStep(const DemoControllerState& ctrl,
                                        double theta_meas,
                                        const ArmGeometry& geom,
                                        const MuscleParams& mp);

}  // namespace stylebias

#endif  // STYLEBIAS_TENDON_SIM_ARM_H_
