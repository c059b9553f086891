#pragma once
// T-periodic generating-particle loops, test-loop constructions and symmetry
// projections.

#include <string>
#include <vector>

#include "nb/archimedean.hpp"
#include "nb/chambers.hpp"
#include "nb/groups.hpp"
#include "nb/linalg.hpp"

namespace nb {

struct GeneratingLoop {
  double T = 1;
  std::vector<Vec3> pts;           // m uniform samples, t_i = i T/m, periodic
  int N = 0;                       // number of bodies
  std::vector<Mat3> mats;          // R - I for every non-identity symmetry R
  std::vector<Mat3> rots;          // the non-identity R themselves (same order)

  int m() const { return static_cast<int>(pts.size()); }
  double dt() const { return T / m(); }
  Vec3 at(double t) const;         // piecewise-linear periodic interpolation
};

// Loop-space symmetry operation: (g.u)_i = W u_{(eps*i + shift) mod m}.
struct SymOp {
  Mat3 W;
  int shift = 0;
  int eps = 1;
};

SymOp compose(const SymOp& g1, const SymOp& g2);
std::vector<SymOp> sym_closure(const std::vector<SymOp>& gens, int m);

// Group-average projection onto the fixed subspace of the closure of gens.
GeneratingLoop symmetrize(const GeneratingLoop& u, const std::vector<SymOp>& gens);
// Max sample displacement the projection would introduce (0 when already fixed).
double symmetry_defect(const GeneratingLoop& u, const std::vector<SymOp>& gens);

// Piecewise-linear resampling onto a uniform grid of m2 samples; exact on the
// original samples when m2 divides (or is a multiple of) m.
GeneratingLoop resample_loop(const GeneratingLoop& u, int m2);

// Constraint generator builders; shifts must be exact on the grid.
std::vector<SymOp> abc_constraint(const ReferenceFrame& fr, int m, bool plus_rotation);
std::vector<SymOp> tilde_constraint(const Mat3& mirror, const Mat3& rot, int M, int m);
std::vector<SymOp> k4_constraint(int m);

// Constant-speed traversal of the edge path nu repeated n times; the sample at
// t = 0 sits at edge-parameter tau0.
GeneratingLoop loop_from_nu(const ArchimedeanPolyhedron& p, const std::vector<int>& nu,
                            int n, double T, int m, double tau0 = 0.0);

// Constant-speed polyline through the chamber centers of sigma repeated n times.
GeneratingLoop loop_from_sigma(const ChamberComplex& cc, const std::vector<int>& sigma,
                               int n, double T, int m);

// Full configuration: trajectory j is R_j applied to the generating particle.
std::vector<std::vector<Vec3>> expand_orbit(const GeneratingLoop& u, const RotationGroup& g);

// Four half-circles of radius rho (the 4-body test loop).
GeneratingLoop k4_test_loop(double rho, double T, int m);

// Minimum over samples of the distance from u_1 to the union of axis lines.
double min_distance_to_gamma(const GeneratingLoop& u, const AxisSet& axes);
double k4_min_distance_to_gamma(const GeneratingLoop& u);

// x strictly inside the open planar angle spanned by er, es (plane normal n).
bool in_open_angle(const Vec3& x, const Vec3& er, const Vec3& es, const Vec3& n,
                   double tol = 1e-10);

struct ConeDescriptor {
  enum class Kind { K4, KPi, Knu, Free } kind = Kind::Free;
  Solid P = Solid::Tetrahedron;  // KPi
  int cone = 0;                  // KPi index i
  std::vector<int> nu;           // Knu
  int n = 1;
};

}  // namespace nb
