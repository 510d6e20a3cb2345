#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "ecm/scenario.hpp"

namespace ecm {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class ArrayCase { pa, fdamimo };

std::string case_label(ArrayCase c, int subarrays);

// entry k = exp(j 2pi spacing k cos(az) cos(el)); a_t, a_r, subarray a_t and b all use this
CVector uniform_steering(int count, double spacing_per_wavelength, const Direction& dir);

// entry s = exp(-j 2pi (2R/c) s df)
CVector range_steering(int subarrays, double subarray_offset_hz, double range_m);

CVector receive_steering(const RadarConfig& cfg, const Scenario& scn, const Direction& dir);
CVector subarray_phase_steering(const RadarConfig& cfg, const Scenario& scn, const Direction& dir);
CVector composite_steering(const RadarConfig& cfg, const Scenario& scn, const Direction& dir,
                           double range_m);

// beamformer weights a(dir)/sqrt(count)
CVector transmit_weights(int count, double spacing_per_wavelength, const Direction& dir);
cplx transmit_gain(const CVector& weights, const CVector& steering);

// E_t for the full aperture (pa) or a single subarray (fdamimo) toward `dir`
cplx transmit_gain_toward(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                          const Direction& dir);
int coherent_count(ArrayCase c, const RadarConfig& cfg);

// a_r (pa) or c (x) a_r with transmit index major (fdamimo)
CVector virtual_steering(ArrayCase c, const RadarConfig& cfg, const Scenario& scn,
                         const Direction& dir, double range_m);
Eigen::Index snapshot_size(ArrayCase c, const RadarConfig& cfg);

CVector target_snapshot_pa(cplx xi, const RadarConfig& cfg, const Scenario& scn);
CVector target_snapshot_fdamimo(cplx xi, const RadarConfig& cfg, const Scenario& scn);
CVector target_snapshot(ArrayCase c, cplx xi, const RadarConfig& cfg, const Scenario& scn);

}  // namespace ecm
