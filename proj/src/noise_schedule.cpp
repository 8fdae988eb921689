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

#include "sid/noise_schedule.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sid/errors.hpp"

namespace sid {

namespace {

void require_positive_scale(double scale)
{
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw ConfigError("noise schedule scale must be positive and finite");
    }
}

}  // namespace

NoiseSchedule NoiseSchedule::power(double scale, double beta)
{
    require_positive_scale(scale);
    return {Family::Power, scale, beta};
}

NoiseSchedule NoiseSchedule::log_power(double scale, double alpha)
{
    require_positive_scale(scale);
    return {Family::LogPower, scale, alpha};
}

NoiseSchedule NoiseSchedule::exponential(double scale, double beta)
{
    require_positive_scale(scale);
    return {Family::Exponential, scale, beta};
}

NoiseSchedule NoiseSchedule::constant(double scale)
{
    require_positive_scale(scale);
    return {Family::Constant, scale, 0.0};
}

NoiseSchedule NoiseSchedule::custom(std::string label, std::function<double(double)> eps)
{
    if (!eps) throw ConfigError("custom noise schedule needs a callable");
    NoiseSchedule s{Family::Custom, 1.0, 0.0};
    s.label_ = std::move(label);
    s.custom_ = std::move(eps);
    return s;
}

double NoiseSchedule::operator()(double t) const
{
    switch (family_) {
    case Family::Power: return scale_ * std::pow(1.0 + t, -exponent_);
    case Family::LogPower: return scale_ * std::pow(std::log(t + std::numbers::e), -exponent_);
    case Family::Exponential: return scale_ * std::exp(-exponent_ * t);
    case Family::Constant: return scale_;
    case Family::Custom: return custom_(t);
    }
    return 0.0;
}

std::string NoiseSchedule::describe() const
{
    std::ostringstream out;
    switch (family_) {
    case Family::Power: out << scale_ << "*(1+t)^-" << exponent_; break;
    case Family::LogPower: out << scale_ << "*log(t+e)^-" << exponent_; break;
    case Family::Exponential: out << scale_ << "*exp(-" << exponent_ << "t)"; break;
    case Family::Constant: out << scale_; break;
    case Family::Custom: out << "custom(" << label_ << ")"; break;
    }
    return out.str();
}

}  // namespace sid
