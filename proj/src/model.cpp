#include "isgame/model.hpp"

#include <cmath>
#include <string>

namespace isgame {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw InvalidParams("invalid game parameters: " + what);
  }
}

}  // namespace

GameParams::GameParams(const ParamValues& v) : v_(v) {
  for (auto name : kParamNames) {
    require(std::isfinite(param_field(v, name)), std::string(name) + " must be finite");
  }
  require(v.r > 0.0, "r > 0 required");
  require(v.sigma > 0.0, "sigma > 0 required");
  require(v.c > 0.0, "c > 0 required");
  require(v.d > 0.0, "d > 0 required");
  require(v.lambda > 0.0, "lambda > 0 required");
  require(v.gamma > 0.0, "gamma > 0 required");
  require(v.s > 0.0, "s > 0 required");
  require(v.a >= 0.0, "a >= 0 required");
  require(v.b >= 0.0, "b >= 0 required");
  require(v.q >= 0.0, "q >= 0 required");
  require(v.a < v.lambda, "a < lambda required (terminal sensitivity below proportional cost)");
  require(v.b < v.gamma, "b < gamma required (terminal sensitivity below proportional gain)");
  require(1.0 - v.lambda * v.r > 0.0, "1 - lambda*r > 0 required");
  require(1.0 - v.b * v.r > 0.0, "1 - b*r > 0 required");
  require(1.0 - v.a * v.r > 0.0, "1 - a*r > 0 required");
}

double* param_field(ParamValues& v, std::string_view name) noexcept {
  if (name == "r") return &v.r;
  if (name == "sigma") return &v.sigma;
  if (name == "c") return &v.c;
  if (name == "d") return &v.d;
  if (name == "lambda") return &v.lambda;
  if (name == "gamma") return &v.gamma;
  if (name == "a") return &v.a;
  if (name == "b") return &v.b;
  if (name == "s") return &v.s;
  if (name == "q") return &v.q;
  return nullptr;
}

double param_field(const ParamValues& v, std::string_view name) {
  auto copy = v;
  const double* f = param_field(copy, name);
  if (f == nullptr) {
    throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
  }
  return *f;
}

GameParams GameParams::with(std::string_view name, double value) const {
  ParamValues v = v_;
  double* f = param_field(v, name);
  if (f == nullptr) {
    throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
  }
  *f = value;
  return GameParams(v);
}

double theta(const GameParams& p) noexcept { return std::sqrt(2.0 * p.r() / (p.sigma() * p.sigma())); }

double phi1(double x, const OdeCoefficients& co, const GameParams& p) noexcept {
  const double t = theta(p);
  return co.c11 * std::exp(t * x) + co.c12 * std::exp(-t * x) + (x - p.s()) / p.r();
}

double phi1_prime(double x, const OdeCoefficients& co, const GameParams& p) noexcept {
  const double t = theta(p);
  return t * co.c11 * std::exp(t * x) - t * co.c12 * std::exp(-t * x) + 1.0 / p.r();
}

double phi1_second(double x, const OdeCoefficients& co, const GameParams& p) noexcept {
  const double t = theta(p);
  return t * t * (co.c11 * std::exp(t * x) + co.c12 * std::exp(-t * x));
}

double phi2(double x, const OdeCoefficients& co, const GameParams& p) noexcept {
  const double t = theta(p);
  return co.c21 * std::exp(t * x) + co.c22 * std::exp(-t * x) + (p.q() - x) / p.r();
}

double phi2_prime(double x, const OdeCoefficients& co, const GameParams& p) noexcept {
  const double t = theta(p);
  return t * co.c21 * std::exp(t * x) - t * co.c22 * std::exp(-t * x) - 1.0 / p.r();
}

double phi2_second(double x, const OdeCoefficients& co, const GameParams& p) noexcept {
  const double t = theta(p);
  return t * t * (co.c21 * std::exp(t * x) + co.c22 * std::exp(-t * x));
}

double ode_residual1(double x, const OdeCoefficients& co, const GameParams& p) noexcept {
  const double half_var = 0.5 * p.sigma() * p.sigma();
  return half_var * phi1_second(x, co, p) - p.r() * phi1(x, co, p) + x - p.s();
}

double ode_residual2(double x, const OdeCoefficients& co, const GameParams& p) noexcept {
  const double half_var = 0.5 * p.sigma() * p.sigma();
  return half_var * phi2_second(x, co, p) - p.r() * phi2(x, co, p) + p.q() - x;
}

}  // namespace isgame
