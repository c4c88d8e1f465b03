#ifndef HB_GEOMETRY_HPP
#define HB_GEOMETRY_HPP

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hb {

/// Proper-Euler axis triples supported by the decomposition. The middle
/// axis differs; first and last are always z.
enum class EulerConvention { ZXZ, ZYZ };

inline std::string to_string(EulerConvention c) {
  return c == EulerConvention::ZXZ ? "zxz" : "zyz";
}

/// Unit quaternion in canonical sign form: w >= 0, and if w == 0 the first
/// nonzero of (x, y, z) is positive. q and -q denote the same rotation, so
/// the canonical representative is unique per rotation.
template <typename Scalar = double>
class UnitQuaternion {
 public:
  using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
  using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
  using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

  UnitQuaternion() : q_(Scalar(1), Scalar(0), Scalar(0), Scalar(0)) {}

  UnitQuaternion(Scalar w, Scalar x, Scalar y, Scalar z) : q_(w, x, y, z) {
    normalizeCanonical();
  }

  explicit UnitQuaternion(const Eigen::Quaternion<Scalar>& q) : q_(q) {
    normalizeCanonical();
  }

  static UnitQuaternion identity() { return UnitQuaternion(); }

  static UnitQuaternion fromAxisAngle(const Vec3& axis, Scalar angle) {
    const Scalar n = axis.norm();
    if (n <= Scalar(0)) {
      if (std::abs(angle) > Scalar(0))
        throw std::invalid_argument("fromAxisAngle: zero axis with nonzero angle");
      return identity();
    }
    return UnitQuaternion(Eigen::Quaternion<Scalar>(
        Eigen::AngleAxis<Scalar>(angle, axis / n)));
  }

  /// Rotation-vector (axis * angle) exponential map.
  static UnitQuaternion fromRotationVector(const Vec3& rotvec) {
    const Scalar angle = rotvec.norm();
    if (angle == Scalar(0)) return identity();
    return fromAxisAngle(rotvec / angle, angle);
  }

  Scalar w() const { return q_.w(); }
  Scalar x() const { return q_.x(); }
  Scalar y() const { return q_.y(); }
  Scalar z() const { return q_.z(); }

  Vec4 wxyz() const { return Vec4(q_.w(), q_.x(), q_.y(), q_.z()); }

  UnitQuaternion inverse() const {
    UnitQuaternion r;
    r.q_ = q_.conjugate();
    r.normalizeCanonical();
    return r;
  }

  Mat3 toRotationMatrix() const { return q_.toRotationMatrix(); }

  /// Hamilton product, renormalized and canonicalized.
  friend UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
    return UnitQuaternion(a.q_ * b.q_);
  }

  friend bool operator==(const UnitQuaternion& a, const UnitQuaternion& b) {
    return a.q_.w() == b.q_.w() && a.q_.x() == b.q_.x() &&
           a.q_.y() == b.q_.y() && a.q_.z() == b.q_.z();
  }

 private:
  void normalizeCanonical() {
    const Scalar n2 = q_.squaredNorm();
    if (!(n2 > Scalar(1e-24)))
      throw std::invalid_argument("UnitQuaternion: near-zero norm");
    // Dividing an already-unit quaternion by its ~1.0 norm would perturb the
    // last ulp, so canonicalization stays bit-stable for unit inputs.
    if (std::abs(n2 - Scalar(1)) > Scalar(1e-12)) q_.coeffs() /= std::sqrt(n2);
    // Sign canonicalization over the double cover.
    bool flip = false;
    if (q_.w() < Scalar(0)) {
      flip = true;
    } else if (q_.w() == Scalar(0)) {
      if (q_.x() < Scalar(0)) {
        flip = true;
      } else if (q_.x() == Scalar(0)) {
        if (q_.y() < Scalar(0)) {
          flip = true;
        } else if (q_.y() == Scalar(0) && q_.z() < Scalar(0)) {
          flip = true;
        }
      }
    }
    if (flip) q_.coeffs() = -q_.coeffs();
  }

  Eigen::Quaternion<Scalar> q_;
};

using UnitQuaterniond = UnitQuaternion<double>;

/// Angular distance on SO(3), in [0, pi]; insensitive to quaternion sign.
/// Mathematically 2*acos(|<a,b>|), evaluated through the relative rotation's
/// half-angle sine/cosine pair: acos alone loses ~8 digits near zero angle.
template <typename Scalar>
Scalar geodesicAngle(const UnitQuaternion<Scalar>& a, const UnitQuaternion<Scalar>& b) {
  // a * conj(b), written out so identical terms cancel exactly when a == b.
  const Scalar aw = a.w(), ax = a.x(), ay = a.y(), az = a.z();
  const Scalar bw = b.w(), bx = b.x(), by = b.y(), bz = b.z();
  const Scalar rw = aw * bw + ax * bx + ay * by + az * bz;
  const Scalar rx = ax * bw - aw * bx - (ay * bz - az * by);
  const Scalar ry = ay * bw - aw * by - (az * bx - ax * bz);
  const Scalar rz = az * bw - aw * bz - (ax * by - ay * bx);
  const Scalar sinHalf = std::sqrt(rx * rx + ry * ry + rz * rz);
  return Scalar(2) * std::atan2(sinHalf, std::abs(rw));
}

/// Davenport angles for z-x-z or z-y-z triples. alpha and gamma lie in
/// (-pi, pi], beta in [0, pi]; when beta is degenerate (0 or pi within
/// 1e-9 on sin(beta)) gamma is folded into alpha and set to 0.
template <typename Scalar = double>
struct EulerAngles {
  Scalar alpha{0};
  Scalar beta{0};
  Scalar gamma{0};
  EulerConvention convention{EulerConvention::ZXZ};
};

using EulerAnglesd = EulerAngles<double>;

namespace detail {

template <typename Scalar>
Scalar wrapPi(Scalar a) {
  // atan2 yields [-pi, pi]; move the -pi endpoint to +pi.
  if (a <= Scalar(-M_PI)) a += Scalar(2) * Scalar(M_PI);
  return a;
}

}  // namespace detail

/// R(q) = Rz(alpha) * Rmid(beta) * Rz(gamma), mid axis per convention.
///
/// Matrix entries used for extraction:
///   ZXZ: r02 =  sa*sb   r12 = -ca*sb   r20 = sb*sg   r21 =  sb*cg   r22 = cb
///   ZYZ: r02 =  ca*sb   r12 =  sa*sb   r20 = -sb*cg  r21 =  sb*sg   r22 = cb
/// so sin(beta) = hypot(r02, r12) >= 0 in both. When sin(beta) < 1e-9 the
/// first and last rotations share an axis: gamma folds into alpha and the
/// top-left block is Rz(alpha) (times diag(1,-1) for beta = pi).
template <typename Scalar>
EulerAngles<Scalar> decompose(const UnitQuaternion<Scalar>& q, EulerConvention convention) {
  using std::atan2;
  const auto r = q.toRotationMatrix();
  EulerAngles<Scalar> e;
  e.convention = convention;

  const Scalar sb = std::hypot(r(0, 2), r(1, 2));
  const Scalar cb = r(2, 2);
  if (sb < Scalar(1e-9)) {
    e.beta = cb >= Scalar(0) ? Scalar(0) : Scalar(M_PI);
    e.gamma = Scalar(0);
    if (convention == EulerConvention::ZYZ && cb < Scalar(0))
      e.alpha = detail::wrapPi(atan2(-r(1, 0), -r(0, 0)));
    else
      e.alpha = detail::wrapPi(atan2(r(1, 0), r(0, 0)));
    return e;
  }

  e.beta = atan2(sb, cb);
  if (convention == EulerConvention::ZXZ) {
    e.alpha = detail::wrapPi(atan2(r(0, 2), -r(1, 2)));
    e.gamma = detail::wrapPi(atan2(r(2, 0), r(2, 1)));
  } else {
    e.alpha = detail::wrapPi(atan2(r(1, 2), r(0, 2)));
    e.gamma = detail::wrapPi(atan2(r(2, 1), -r(2, 0)));
  }
  return e;
}

template <typename Scalar>
UnitQuaternion<Scalar> composeElementary(const EulerAngles<Scalar>& e) {
  using UQ = UnitQuaternion<Scalar>;
  using Vec3 = typename UQ::Vec3;
  const Vec3 zAxis(0, 0, 1);
  const Vec3 midAxis = e.convention == EulerConvention::ZXZ ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  return UQ::fromAxisAngle(zAxis, e.alpha) * UQ::fromAxisAngle(midAxis, e.beta) *
         UQ::fromAxisAngle(zAxis, e.gamma);
}

/// Up to three intermediate orientations; reaching them in order realizes
/// the full rotation from the start orientation to the last entry.
template <typename Scalar = double>
struct SubgoalPlan {
  std::vector<UnitQuaternion<Scalar>> subgoals;
  EulerConvention convention{EulerConvention::ZXZ};

  std::size_t size() const { return subgoals.size(); }
  bool empty() const { return subgoals.empty(); }
};

using SubgoalPland = SubgoalPlan<double>;

/// Decomposes target * current^-1 into elementary rotations about fixed
/// world axes and emits the cumulative orientation after each one.
/// Elementary rotations below 1e-6 rad produce no waypoint of their own;
/// the final waypoint is always exactly `target` for a non-empty plan.
template <typename Scalar>
SubgoalPlan<Scalar> planSubgoals(const UnitQuaternion<Scalar>& current,
                                 const UnitQuaternion<Scalar>& target,
                                 EulerConvention convention) {
  using UQ = UnitQuaternion<Scalar>;
  using Vec3 = typename UQ::Vec3;

  SubgoalPlan<Scalar> plan;
  plan.convention = convention;
  if (geodesicAngle(current, target) < Scalar(1e-9)) return plan;

  const UQ relative = target * current.inverse();
  const EulerAngles<Scalar> e = decompose(relative, convention);

  const Vec3 zAxis(0, 0, 1);
  const Vec3 midAxis = convention == EulerConvention::ZXZ ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  const std::pair<Vec3, Scalar> steps[3] = {
      {zAxis, e.gamma}, {midAxis, e.beta}, {zAxis, e.alpha}};

  UQ acc = current;
  for (const auto& [axis, angle] : steps) {
    acc = UQ::fromAxisAngle(axis, angle) * acc;
    if (std::abs(angle) >= Scalar(1e-6)) plan.subgoals.push_back(acc);
  }
  if (plan.subgoals.empty())
    plan.subgoals.push_back(target);  // residual rotation under 1e-6 per axis
  else
    plan.subgoals.back() = target;  // exact endpoint, no accumulation drift
  return plan;
}

}  // namespace hb

#endif  // HB_GEOMETRY_HPP
