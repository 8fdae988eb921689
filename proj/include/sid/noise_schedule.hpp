/*
   Copyright 2026 The sid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <functional>
#include <string>

namespace sid {

/// Time-dependent noise intensity t -> eps(t) from a small parametric menu.
/// Custom carries an arbitrary callable; it can be simulated but not
/// classified symbolically.
class NoiseSchedule {
public:
    enum class Family { Power, LogPower, Exponential, Constant, Custom };

    /// C (1 + t)^{-beta}
    static NoiseSchedule power(double scale, double beta);
    /// C log(t + e)^{-alpha}
    static NoiseSchedule log_power(double scale, double alpha);
    /// C exp(-beta t)
    static NoiseSchedule exponential(double scale, double beta);
    /// C
    static NoiseSchedule constant(double scale);
    static NoiseSchedule custom(std::string label, std::function<double(double)> eps);

    double operator()(double t) const;

    Family family() const noexcept { return family_; }
    double scale() const noexcept { return scale_; }
    /// beta for Power/Exponential, alpha for LogPower, 0 otherwise.
    double exponent() const noexcept { return exponent_; }
    std::string describe() const;

private:
    NoiseSchedule(Family family, double scale, double exponent)
        : family_(family), scale_(scale), exponent_(exponent)
    {
    }

    Family family_;
    double scale_;
    double exponent_;
    std::string label_;
    std::function<double(double)> custom_;
};

}  // namespace sid
