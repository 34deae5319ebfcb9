#include "twistvn/symmetric_transforms.hpp"

#include <stdexcept>

namespace twistvn {

namespace {

double sign(int i) { return (i % 2 == 0) ? 1.0 : -1.0; }

void require(const SymmetricVector& v, Convention c, const char* who) {
  if (v.convention != c) throw std::invalid_argument(std::string(who) + ": wrong convention");
  if (v.values.empty()) throw std::invalid_argument(std::string(who) + ": d >= 1 required");
}

}  // namespace

std::string to_string(Convention c) {
  switch (c) {
    case Convention::power: return "power";
    case Convention::elementary: return "elementary";
    case Convention::homogeneous: return "homogeneous";
  }
  return "?";
}

Convention convention_from_string(const std::string& s) {
  if (s == "power") return Convention::power;
  if (s == "elementary") return Convention::elementary;
  if (s == "homogeneous") return Convention::homogeneous;
  throw std::invalid_argument("unknown convention: " + s);
}

SymmetricVector power_to_elementary(const SymmetricVector& p) {
  require(p, Convention::power, "power_to_elementary");
  const int d = p.dim();
  std::vector<Complex> e(d + 1);
  e[0] = Complex(1.0, 0.0);
  // k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
  for (int k = 1; k <= d; ++k) {
    Complex acc(0.0, 0.0);
    for (int i = 1; i <= k; ++i) acc += sign(i - 1) * e[k - i] * p.values[i - 1];
    e[k] = acc / double(k);
  }
  return SymmetricVector{Convention::elementary, {e.begin() + 1, e.end()}};
}

SymmetricVector elementary_to_power(const SymmetricVector& e) {
  require(e, Convention::elementary, "elementary_to_power");
  const int d = e.dim();
  std::vector<Complex> p(d + 1);
  // p_k = sum_{i=1..k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
  for (int k = 1; k <= d; ++k) {
    Complex acc = sign(k - 1) * double(k) * e.values[k - 1];
    for (int i = 1; i < k; ++i) acc += sign(i - 1) * e.values[i - 1] * p[k - i];
    p[k] = acc;
  }
  return SymmetricVector{Convention::power, {p.begin() + 1, p.end()}};
}

SymmetricVector elementary_to_homogeneous(const SymmetricVector& e) {
  require(e, Convention::elementary, "elementary_to_homogeneous");
  const int d = e.dim();
  std::vector<Complex> h(d + 1);
  h[0] = Complex(1.0, 0.0);
  // h_k = sum_{i=1..k} (-1)^{i-1} e_i h_{k-i}
  for (int k = 1; k <= d; ++k) {
    Complex acc(0.0, 0.0);
    for (int i = 1; i <= k; ++i) acc += sign(i - 1) * e.values[i - 1] * h[k - i];
    h[k] = acc;
  }
  return SymmetricVector{Convention::homogeneous, {h.begin() + 1, h.end()}};
}

SymmetricVector homogeneous_to_elementary(const SymmetricVector& h) {
  require(h, Convention::homogeneous, "homogeneous_to_elementary");
  const int d = h.dim();
  std::vector<Complex> e(d + 1);
  e[0] = Complex(1.0, 0.0);
  // invert h_k = sum_{i=1..k} (-1)^{i-1} e_i h_{k-i} for e_k
  for (int k = 1; k <= d; ++k) {
    Complex acc = h.values[k - 1];
    for (int i = 1; i < k; ++i) acc -= sign(i - 1) * e[i] * h.values[k - i - 1];
    e[k] = sign(k - 1) * acc;
  }
  return SymmetricVector{Convention::elementary, {e.begin() + 1, e.end()}};
}

SymmetricVector convert(const SymmetricVector& v, Convention target) {
  if (v.convention == target) return v;
  SymmetricVector e = v;
  switch (v.convention) {
    case Convention::power: e = power_to_elementary(v); break;
    case Convention::homogeneous: e = homogeneous_to_elementary(v); break;
    case Convention::elementary: break;
  }
  switch (target) {
    case Convention::elementary: return e;
    case Convention::power: return elementary_to_power(e);
    case Convention::homogeneous: return elementary_to_homogeneous(e);
  }
  throw std::logic_error("convert: unreachable");
}

std::vector<Complex> apply_convention(const std::vector<Complex>& values, Convention c) {
  const int d = static_cast<int>(values.size());
  if (d < 1) throw std::invalid_argument("apply_convention: d >= 1 required");
  std::vector<Complex> p(d);
  for (int k = 1; k <= d; ++k) {
    Complex acc(0.0, 0.0);
    for (Complex a : values) {
      Complex m(1.0, 0.0);
      for (int i = 0; i < k; ++i) m *= a;
      acc += m;
    }
    p[k - 1] = acc;
  }
  const SymmetricVector pv{Convention::power, p};
  return convert(pv, c).values;
}

}  // namespace twistvn
