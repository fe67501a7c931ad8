#ifndef ENTIM_OPTICS_HPP
#define ENTIM_OPTICS_HPP

#include "entim/gain.hpp"
#include "entim/grid.hpp"

#include <complex>
#include <string>
#include <vector>

namespace entim {

enum class Scheme { a, b };              // a: idler array + signal point
enum class ArmGeometry { focal, image }; // z = f vs z = 2f

/// Two-arm imaging bench behind the beam splitter. The signal arm is
/// fixed: object in the near field, then lens at f with the detector in
/// the focal plane. The idler arm carries no object and is configured
/// focal (z = f) or image (z = 2f). The scheme selects which arm feeds
/// the detector array; the other arm ends in a single-pixel detector at
/// fixed_point.
struct ImagingSetup {
  Scheme scheme = Scheme::a;
  ArmGeometry z_config = ArmGeometry::focal; // idler-arm geometry
  double focal_length = 5e-2;
  double lambda = 702e-9;
  GridPtr grid;
  std::vector<std::complex<double>> object; // T(x) on the near-field lattice
  double fixed_point = 0.0;                  // point-detector coordinate (m)

  void validate() const; // throws ConfigError

  /// Focal-plane pixel pitch lambda f / (n_x dx); the focal lattice is the
  /// q lattice relabeled as x = lambda f q / (2 pi).
  double focal_pitch() const {
    return lambda * focal_length / grid->space_window();
  }
  double pitch_for(ArmGeometry gm) const {
    return gm == ArmGeometry::focal ? focal_pitch() : grid->dx();
  }

  ArmGeometry array_geometry() const {
    return scheme == Scheme::a ? z_config : ArmGeometry::focal;
  }
  ArmGeometry point_geometry() const {
    return scheme == Scheme::a ? ArmGeometry::focal : z_config;
  }
  Beam array_beam() const { return scheme == Scheme::a ? Beam::idler : Beam::signal; }

  double array_pitch() const { return pitch_for(array_geometry()); }
  double point_pitch() const { return pitch_for(point_geometry()); }

  /// Lattice index of the point detector on its arm's detector lattice.
  int fixed_index() const;

  /// Mean squared object transmission (1/N) sum |T|^2: the vacuum-noise
  /// norm of the object arm, used for detection offsets.
  double object_mean_square() const;

  /// Forward DFT of the object profile, T~(q) on the q lattice. Filled by
  /// validate(); call validate() before sharing a setup across threads.
  const std::vector<std::complex<double>>& object_spectrum() const;

private:
  mutable std::vector<std::complex<double>> spectrum_cache_;
};

/// Double-slit transmission, slit centers at +-d/2 and width a each:
/// T = 1 on fully open cells, 0 on fully blocked cells, with the partially
/// covered edge cells weighted so that the lattice aperture keeps both the
/// open area (2a to within a pixel) and the first diffraction null at
/// q = 2 pi/a of the continuous slit. Geometry must satisfy 0 < a < d and
/// d + a < grid window.
std::vector<std::complex<double>> double_slit(const Grid& grid, double a, double d);

/// One-column numeric text file with n_x transmission samples on the
///near-field lattice in lattice order; values must satisfy |T| <= 1.
std::vector<std::complex<double>> load_object_profile(const std::string& path,
                                                      const Grid& grid);

/// Multiply a position-domain field by the object transmission.
void apply_object(Field& field, const std::vector<std::complex<double>>& object);

/// Ideal f-f lens map (exact optical Fourier transform): the output pixel
/// j holds the input spectrum at q_j, i.e. amplitude at focal coordinate
/// x = lambda f q_j/(2 pi); pixel pitch lambda f/(n_x dx). Unitary per
/// time slice. Input must be position-domain; output is tagged position
/// (focal-plane coordinates).
Field propagate_f_f(const Field& in, double focal_length, double lambda);

/// 2f-2f imaging map: out(x) = -in(-x) (unit magnification, inverted, with
/// the global -1 of two cascaded Fourier transforms).
Field propagate_2f_2f(const Field& in, double focal_length, double lambda);

/// Spectral kernel h~_arm(x_det, q): how the q component of the given beam
/// at the crystal exit face reaches detector pixel det_index. Signal arm:
/// (1/sqrt N) T~(q_det - q). Idler arm, z=f: delta at q = q_det. Idler
/// arm, z=2f: -(1/sqrt N) e^{-i q x_det}. Indices follow the DFT layout.
std::complex<double> kernel_spectrum(const ImagingSetup& setup, Beam arm,
                                     int det_index, int q_index);

/// Position-domain kernel h_arm(x_det, x), the DFT partner of
/// kernel_spectrum over the near-field coordinate.
std::complex<double> kernel_position(const ImagingSetup& setup, Beam arm,
                                     int det_index, int x_index);

} // namespace entim

#endif
