#include "capsys/capacities.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <boost/multiprecision/cpp_int.hpp>

namespace capsys {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational rational_from_double(double x) {
  int exp = 0;
  const double mant = std::frexp(x, &exp);      // x = mant * 2^exp, |mant| in [0.5,1)
  const auto num = static_cast<long long>(std::ldexp(mant, 53));  // exact
  Rational r(num);
  const int shift = exp - 53;
  if (shift >= 0)
    r *= Rational(BigInt(1) << shift);
  else
    r /= Rational(BigInt(1) << (-shift));
  return r;
}

}  // namespace

CapacitySequence ellipsoid_sequence(const std::vector<double>& a, int m) {
  if (m < 1) throw std::invalid_argument("ellipsoid_sequence: m must be >= 1");
  if (a.empty()) throw std::invalid_argument("ellipsoid_sequence: empty axis list");
  for (double ai : a)
    if (!(ai > 0.0))
      throw std::invalid_argument("ellipsoid_sequence: axes must be > 0");

  std::vector<Rational> ra;
  ra.reserve(a.size());
  for (double ai : a) ra.push_back(rational_from_double(ai));

  struct Entry {
    Rational value;
    int stream;
    long long mult;
  };
  auto cmp = [](const Entry& x, const Entry& y) {
    if (x.value != y.value) return x.value > y.value;  // min-heap
    return x.stream > y.stream;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (int i = 0; i < static_cast<int>(ra.size()); ++i)
    heap.push({ra[i], i, 1});

  CapacitySequence seq;
  seq.rel_tol = 1e-6;
  seq.values.reserve(m);
  while (static_cast<int>(seq.values.size()) < m) {
    Entry e = heap.top();
    heap.pop();
    seq.values.push_back(static_cast<double>(e.value));
    seq.provenance.push_back(Provenance::ClosedForm);
    heap.push({ra[e.stream] * (e.mult + 1), e.stream, e.mult + 1});
  }
  return seq;
}

CapacitySequence polydisc_sequence(double a, int n, int m) {
  if (m < 1) throw std::invalid_argument("polydisc_sequence: m must be >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("polydisc_sequence: a must be > 0");
  if (n < 1) throw std::invalid_argument("polydisc_sequence: n must be >= 1");
  CapacitySequence seq;
  seq.rel_tol = 1e-6;
  for (int i = 1; i <= m; ++i) {
    seq.values.push_back(i * a);
    seq.provenance.push_back(Provenance::ClosedForm);
  }
  return seq;
}

double c1_numeric(const Body& body, const SolveConfig& cfg, int threads) {
  auto runs = minimize(body, cfg, threads);
  for (const auto& r : runs)
    if (r.converged) return r.value;
  throw std::runtime_error("c1_numeric: no multistart run converged");
}

IndexResult sys_index(const CapacitySequence& seq) {
  if (seq.values.empty()) throw std::invalid_argument("sys_index: empty sequence");
  const double cut = seq.values[0] * (1.0 + seq.rel_tol);
  IndexResult res;
  res.index = 0;
  for (double c : seq.values) {
    if (c <= cut)
      ++res.index;
    else
      break;
  }
  res.is_lower_bound = res.index == static_cast<int>(seq.values.size());
  return res;
}

bool is_generalized_zoll(const CapacitySequence& seq, int n) {
  if (static_cast<int>(seq.values.size()) < n)
    throw std::invalid_argument("is_generalized_zoll: sequence shorter than n");
  return seq.values[n - 1] <= seq.values[0] * (1.0 + seq.rel_tol);
}

long long index_bound(int n, BoundFlavor flavor) {
  if (n < 1) throw std::invalid_argument("index_bound: n must be >= 1");
  const long long nn = n;
  switch (flavor) {
    case BoundFlavor::General: return 4 * nn * nn * nn;
    case BoundFlavor::CentrallySymmetric: return 2 * nn * nn;
    case BoundFlavor::S1Invariant:
    case BoundFlavor::UniquenessOfSystoles: return nn;
  }
  throw std::logic_error("index_bound: unknown flavor");
}

double systolic_ratio(double c1, double volume, int n) {
  if (!(volume > 0.0)) throw std::invalid_argument("systolic_ratio: volume must be > 0");
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return std::pow(c1, n) / (fact * volume);
}

}  // namespace capsys
