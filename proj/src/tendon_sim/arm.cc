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

#include "stylebias/tendon_sim/arm.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "stylebias/errors.h"

namespace stylebias {
namespace {

double Sign(double x) { return (x > 0) - (x < 0); }

MuscleVector UncheckedPathLengths(double theta, const ArmGeometry& geom) {
  return geom.rest_path_lengths - geom.moment_arms * theta;
}

bool Finite(const ArmState& s) {
  return std::isfinite(s.theta) && std::isfinite(s.theta_dot) &&
         s.l_cmd.allFinite() && s.l_cmd_rate.allFinite();
}

}  // namespace

ArmGeometry ArmGeometry::WithRadius(double r) {
  ArmGeometry geom;
  geom.joint_radius = r;
  geom.moment_arms = MuscleVector(r, -r, r);
  return geom;
}

ArmState RestState(const ArmGeometry& geom) {
  ArmState state;
  state.l_cmd = geom.rest_path_lengths;
  return state;
}

MuscleVector PathLengths(double theta, const ArmGeometry& geom) {
  if (!(theta >= ArmGeometry::kMinTheta && theta <= ArmGeometry::kMaxTheta)) {
    throw RangeError("joint angle " + std::to_string(theta) +
                     " rad is outside the operating range");
  }
  return UncheckedPathLengths(theta, geom);
}

double MuscleTension(double stretch, double stretch_rate,
                     const MuscleParams& mp) {
  if (stretch <= 0) return 0;
  const double f = mp.elastic_scale * std::expm1(mp.elastic_rate * stretch) +
                   mp.viscous * stretch_rate + mp.coulomb * Sign(stretch_rate);
  return std::max(0.0, f);
}

double ElasticStretch(double tension, const MuscleParams& mp) {
  return std::log1p(tension / mp.elastic_scale) / mp.elastic_rate;
}

MuscleVector BodyImage(double theta_ref, const MuscleVector& f_ref,
                       const ArmGeometry& geom, const MuscleParams& mp) {
  if ((f_ref.array() < 0).any()) {
    throw SpecificationError("target muscle tension must be non-negative");
  }
  MuscleVector l_ref = UncheckedPathLengths(theta_ref, geom);
  for (int i = 0; i < kNumMuscles; ++i) l_ref[i] -= ElasticStretch(f_ref[i], mp);
  return l_ref;
}

MuscleVector MuscleTensions(const ArmState& state, const ArmGeometry& geom,
                            const MuscleParams& mp) {
  const MuscleVector stretch =
      UncheckedPathLengths(state.theta, geom) - state.l_cmd;
  const MuscleVector stretch_rate =
      -geom.moment_arms * state.theta_dot - state.l_cmd_rate;
  MuscleVector f;
  for (int i = 0; i < kNumMuscles; ++i) {
    f[i] = MuscleTension(stretch[i], stretch_rate[i], mp);
  }
  return f;
}

SimStepResult SimStep(const ArmState& state, const MuscleVector& l_ref,
                      double dt_ctrl, const ArmGeometry& geom,
                      const MuscleParams& mp, const SimSettings& settings) {
  if (!(dt_ctrl > 0)) throw SpecificationError("control period must be > 0");
  const int substeps =
      std::max(1, static_cast<int>(std::lround(dt_ctrl / settings.substep)));
  const double h = dt_ctrl / substeps;
  const double max_slew = settings.slew_rate * h;
  const double gravity_torque = geom.mass * settings.gravity * geom.com_distance;

  ArmState s = state;
  for (int k = 0; k < substeps; ++k) {
    const MuscleVector slew =
        (l_ref - s.l_cmd).cwiseMax(-max_slew).cwiseMin(max_slew);
    s.l_cmd += slew;
    s.l_cmd_rate = slew / h;
    const MuscleVector f = MuscleTensions(s, geom, mp);
    const double torque = geom.moment_arms.dot(f) -
                          geom.joint_damping * s.theta_dot -
                          gravity_torque * std::sin(s.theta);
    s.theta_dot += h * torque / geom.inertia;
    s.theta += h * s.theta_dot;
  }
  s.time = state.time + dt_ctrl;
  if (!Finite(s) || !l_ref.allFinite()) {
    throw SimulationFault("non-finite arm state at t = " +
                          std::to_string(s.time));
  }
  return {s, MuscleTensions(s, geom, mp)};
}

double MechanicalEnergy(const ArmState& state, const ArmGeometry& geom,
                        const MuscleParams& mp, const SimSettings& settings) {
  double energy = 0.5 * geom.inertia * state.theta_dot * state.theta_dot +
                  geom.mass * settings.gravity * geom.com_distance *
                      (1 - std::cos(state.theta));
  const MuscleVector stretch =
      UncheckedPathLengths(state.theta, geom) - state.l_cmd;
  for (int i = 0; i < kNumMuscles; ++i) {
    const double d = stretch[i];
    if (d <= 0) continue;
    energy += mp.elastic_scale * (std::expm1(mp.elastic_rate * d) /
                                      mp.elastic_rate -
                                  d);
  }
  return energy;
}

DemoControllerResult DemoControllerStep(const DemoControllerState& ctrl,
                                        double theta_meas,
                                        const ArmGeometry& geom,
                                        const MuscleParams& mp) {
  DemoControllerResult result;
  result.ctrl = ctrl;
  result.ctrl.theta_ref += ctrl.beta * (ctrl.theta_task - theta_meas);
  result.ctrl.f_ref +=
      ctrl.beta * (MuscleVector::Constant(ctrl.f_style) - ctrl.f_ref);
  result.l_ref = BodyImage(result.ctrl.theta_ref, result.ctrl.f_ref, geom, mp);
  return result;
}

}  // namespace stylebias
