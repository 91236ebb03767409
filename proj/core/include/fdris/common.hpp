// SPDX-License-Identifier: Apache-2.0
//
// fdris-lib  C++ library for multi-subarray frequency-diverse RIS network
// simulation and weighted sum-rate optimization
// Copyright (C) 2026 the fdris-lib authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FDRIS_COMMON_HPP
#define FDRIS_COMMON_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace fdris
{
    using cxd = std::complex<double>;
    using CVec = Eigen::VectorXcd;
    using CMat = Eigen::MatrixXcd;
    using RVec = Eigen::VectorXd;
    using RMat = Eigen::MatrixXd;

    constexpr double kPi = 3.14159265358979323846;
    constexpr double kTwoPi = 2.0 * kPi;
    constexpr double kSpeedOfLight = 299792458.0; // m/s

    inline double deg2rad(double deg) { return deg * kPi / 180.0; }
    inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

    // Power ratios
    inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
    inline double lin2db(double lin) { return 10.0 * std::log10(lin); }

    // dBm <-> Watt
    inline double dbm2watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    inline double watt2dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

    inline cxd jexp(double phase) { return std::polar(1.0, phase); }
}

#endif
