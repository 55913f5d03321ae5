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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "stylebias/errors.h"
#include "stylebias/tendon_sim/arm.h"

namespace stylebias {
namespace {

constexpr double kDt = 0.2;

// Angle where the flexor/extensor torque of `f` cancels gravity, found by
// bisection on the torque residual.
double BalancedAngle(const MuscleVector& f, const ArmGeometry& geom,
                     const SimSettings& settings) {
  const double muscle_torque = geom.moment_arms.dot(f);
  const double wl = geom.mass * settings.gravity * geom.com_distance;
  auto residual = [&](double th) { return muscle_torque - wl * std::sin(th); };
  double lo = -std::numbers::pi / 2, hi = std::numbers::pi / 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((residual(lo) > 0) == (residual(mid) > 0)) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(TensionLawTest, KnownStretchGivesHundredNewtons) {
  const MuscleParams mp;
  // c (e^{k d} - 1) = 100 with c = 20 -> e^{k d} = 6
  EXPECT_NEAR(MuscleTension(std::log(6.0) / 50.0, 0, mp), 100.0, 1e-10);
}

TEST(TensionLawTest, SlackMuscleIsSilent) {
  const MuscleParams mp;
  EXPECT_EQ(MuscleTension(0.0, 5.0, mp), 0.0);
  EXPECT_EQ(MuscleTension(-0.01, 5.0, mp), 0.0);
}

TEST(TensionLawTest, NeverNegative) {
  const MuscleParams mp;
  // strong shortening on a small stretch would give a negative raw force
  EXPECT_EQ(MuscleTension(1e-4, -10.0, mp), 0.0);
}

TEST(TensionLawTest, MonotoneInStretchAndRate) {
  const MuscleParams mp;
  for (double rate : {-0.05, 0.0, 0.05}) {
    double prev = -1;
    for (int i = 1; i <= 100; ++i) {
      const double f = MuscleTension(i * 5e-4, rate, mp);
      EXPECT_GE(f, prev);
      prev = f;
    }
  }
  for (int i = 1; i <= 50; ++i) {
    const double d = i * 1e-3;
    EXPECT_LE(MuscleTension(d, -0.01, mp), MuscleTension(d, 0.0, mp));
    EXPECT_LE(MuscleTension(d, 0.0, mp), MuscleTension(d, 0.01, mp));
  }
}

TEST(BodyImageTest, RoundTripsTension) {
  const MuscleParams mp;
  const ArmGeometry geom;
  for (double f : {10.0, 50.0, 100.0, 150.0, 200.0}) {
    for (double theta : {0.0, -0.7, -std::numbers::pi / 2}) {
      const MuscleVector l =
          BodyImage(theta, MuscleVector::Constant(f), geom, mp);
      const MuscleVector stretch = PathLengths(theta, geom) - l;
      for (int i = 0; i < kNumMuscles; ++i) {
        EXPECT_NEAR(MuscleTension(stretch[i], 0, mp), f, 1e-9);
      }
    }
  }
}

TEST(BodyImageTest, RejectsNegativeTension) {
  EXPECT_THROW(BodyImage(0, MuscleVector(-1, 0, 0), ArmGeometry(), {}),
               SpecificationError);
}

TEST(GeometryTest, PathLengthsOutsideRangeThrow) {
  const ArmGeometry geom;
  EXPECT_THROW(PathLengths(ArmGeometry::kMaxTheta + 0.01, geom), RangeError);
  EXPECT_THROW(PathLengths(ArmGeometry::kMinTheta - 0.01, geom), RangeError);
  EXPECT_NO_THROW(PathLengths(-std::numbers::pi / 2, geom));
}

TEST(GeometryTest, FlexorShortensWhenJointFlexes) {
  const ArmGeometry geom = ArmGeometry::WithRadius(0.03);
  const MuscleVector l = PathLengths(-1.0, geom);
  EXPECT_DOUBLE_EQ(l[0], 0.33);
  EXPECT_DOUBLE_EQ(l[1], 0.27);
  EXPECT_DOUBLE_EQ(l[2], 0.33);
}

TEST(SimTest, RestStateStaysAtRest) {
  const ArmGeometry geom;
  ArmState s = RestState(geom);
  for (int i = 0; i < 20; ++i) {
    s = SimStep(s, geom.rest_path_lengths, kDt, geom, {}).state;
  }
  EXPECT_EQ(s.theta, 0.0);
  EXPECT_EQ(s.theta_dot, 0.0);
  EXPECT_NEAR(s.time, 4.0, 1e-12);
}

TEST(SimTest, TorqueBalancedPostureHolds) {
  const MuscleParams mp;
  const SimSettings settings;
  for (double r : {0.03, 0.04}) {
    const ArmGeometry geom = ArmGeometry::WithRadius(r);
    for (const MuscleVector& f :
         {MuscleVector(40, 100, 40), MuscleVector(20, 80, 30),
          MuscleVector(60, 150, 50)}) {
      const double theta_star = BalancedAngle(f, geom, settings);
      const MuscleVector l_ref = BodyImage(theta_star, f, geom, mp);
      ArmState s;
      s.theta = theta_star;
      s.l_cmd = l_ref;
      double worst = 0;
      for (int i = 0; i < 50; ++i) {
        s = SimStep(s, l_ref, kDt, geom, mp, settings).state;
        worst = std::max(worst, std::abs(s.theta - theta_star));
      }
      EXPECT_LT(worst, 1e-3) << "r=" << r << " f=" << f.transpose();
    }
  }
}

TEST(SimTest, SlewRateLimitsCommandVelocity) {
  const ArmGeometry geom;
  ArmState s = RestState(geom);
  const MuscleVector far = geom.rest_path_lengths - MuscleVector::Constant(0.5);
  const SimStepResult out = SimStep(s, far, kDt, geom, {});
  EXPECT_NEAR((out.state.l_cmd - s.l_cmd).cwiseAbs().maxCoeff(), 0.02, 1e-12);
  EXPECT_LE(out.state.l_cmd_rate.cwiseAbs().maxCoeff(), 0.1 + 1e-12);
}

TEST(SimTest, FreeMotionLosesEnergy) {
  // no commanded motion, so muscles and joint only dissipate
  const ArmGeometry geom;
  const MuscleParams mp;
  ArmState s = RestState(geom);
  s.l_cmd = BodyImage(0, MuscleVector::Constant(30), geom, mp);
  s.theta = -0.8;
  const double e0 = MechanicalEnergy(s, geom, mp);
  double e_prev = e0;
  for (int i = 0; i < 50; ++i) {
    s = SimStep(s, s.l_cmd, kDt, geom, mp).state;
    const double e = MechanicalEnergy(s, geom, mp);
    EXPECT_LE(e, e_prev + 1e-3 * e0) << "step " << i;
    e_prev = std::min(e_prev, e);
  }
  EXPECT_LT(e_prev, 0.5 * e0);
}

TEST(SimTest, Deterministic) {
  const ArmGeometry geom = ArmGeometry::WithRadius(0.035);
  const MuscleParams mp;
  auto run = [&] {
    ArmState s = RestState(geom);
    DemoControllerState ctrl;
    for (int i = 0; i < 30; ++i) {
      const DemoControllerResult c = DemoControllerStep(ctrl, s.theta, geom, mp);
      ctrl = c.ctrl;
      s = SimStep(s, c.l_ref, kDt, geom, mp).state;
    }
    return s;
  };
  EXPECT_EQ(run(), run());
}

TEST(SimTest, NonFiniteReferenceFaults) {
  const ArmGeometry geom;
  MuscleVector l_ref = geom.rest_path_lengths;
  l_ref[1] = std::nan("");
  EXPECT_THROW(SimStep(RestState(geom), l_ref, kDt, geom, {}), SimulationFault);
  EXPECT_THROW(SimStep(RestState(geom), l_ref, 0.0, geom, {}),
               SpecificationError);
}

TEST(DemoControllerTest, FirstStepFromRest) {
  const ArmGeometry geom;
  const MuscleParams mp;
  const DemoControllerResult out = DemoControllerStep({}, 0.0, geom, mp);
  EXPECT_NEAR(out.ctrl.theta_ref, -0.1 * std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(out.ctrl.f_ref[0], 10.0, 1e-15);
  const MuscleVector expected =
      BodyImage(-0.1 * std::numbers::pi / 2, MuscleVector::Constant(10), geom,
                mp);
  EXPECT_TRUE(out.l_ref.isApprox(expected, 1e-15));
}

TEST(DemoControllerTest, TensionReferenceConvergesGeometrically) {
  const ArmGeometry geom;
  const MuscleParams mp;
  DemoControllerState ctrl;
  ctrl.f_style = 150;
  ctrl.beta = 0.2;
  for (int k = 1; k <= 25; ++k) {
    ctrl = DemoControllerStep(ctrl, ctrl.theta_task, geom, mp).ctrl;
    EXPECT_NEAR(ctrl.f_ref[1], 150 * (1 - std::pow(0.8, k)), 1e-9);
  }
}

TEST(DemoControllerTest, TaskPostureIsFixedPointOfAngleReference) {
  const ArmGeometry geom;
  DemoControllerState ctrl;
  ctrl.theta_ref = -1.9;
  const DemoControllerResult out =
      DemoControllerStep(ctrl, ctrl.theta_task, geom, {});
  EXPECT_EQ(out.ctrl.theta_ref, -1.9);
}

TEST(DemoControllerTest, ReachesNearTaskPosture) {
  const MuscleParams mp;
  for (double r : {0.03, 0.04}) {
    const ArmGeometry geom = ArmGeometry::WithRadius(r);
    ArmState s = RestState(geom);
    DemoControllerState ctrl;
    for (int i = 0; i < 60; ++i) {
      const DemoControllerResult c = DemoControllerStep(ctrl, s.theta, geom, mp);
      ctrl = c.ctrl;
      s = SimStep(s, c.l_ref, kDt, geom, mp).state;
    }
    EXPECT_NEAR(s.theta, -std::numbers::pi / 2, 0.15) << "r=" << r;
  }
}

}  // namespace
}  // namespace stylebias
