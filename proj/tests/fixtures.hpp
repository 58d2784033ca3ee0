#ifndef SRL_TESTS_FIXTURES_HPP
#define SRL_TESTS_FIXTURES_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "srl/conll_io.hpp"
#include "srl/linalg.hpp"
#include "srl/rng.hpp"

namespace srl::test {

// "a big apple drops from the tree", predicate `drops`, A1 on apple and A3 on from.
inline const char* kAppleSentence =
    "a\ta\tDT\t_\t_\n"
    "big\tbig\tJJ\t_\t_\n"
    "apple\tapple\tNN\t_\tA1\n"
    "drops\tdrop\tVBZ\tdrop.01\t_\n"
    "from\tfrom\tIN\t_\tA3\n"
    "the\tthe\tDT\t_\t_\n"
    "tree\ttree\tNN\t_\t_\n";

inline std::vector<std::string> labels(std::initializer_list<const char*> l) { return {l.begin(), l.end()}; }

/// Central differences of a scalar function of a matrix.
inline Matrix numeric_gradient(const std::function<double(const Matrix&)>& f, Matrix x, double eps = 1e-4) {
  Matrix g(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double orig = x.data()[i];
    x.data()[i] = orig + eps;
    const double up = f(x);
    x.data()[i] = orig - eps;
    const double down = f(x);
    x.data()[i] = orig;
    g.data()[i] = (up - down) / (2 * eps);
  }
  return g;
}

inline double max_relative_error(const Matrix& a, const Matrix& b, double floor = 1e-6) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double d = std::abs(a.data()[i] - b.data()[i]);
    worst = std::max(worst, d / std::max({std::abs(a.data()[i]), std::abs(b.data()[i]), floor}));
  }
  return worst;
}

inline Matrix random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng, double scale = 1.0) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-scale, scale);
  return m;
}

/// Random label sequence with arguments only, no boundary tags.
inline std::vector<std::string> random_frame(std::size_t n, std::size_t predicate, Rng& rng, double arg_rate = 0.3) {
  static const char* args[] = {"A0", "A1", "A2", "AM-TMP"};
  std::vector<std::string> out(n, "_");
  for (std::size_t i = 0; i < n; ++i)
    if (i != predicate && rng.bernoulli(arg_rate)) out[i] = args[rng.uniform_int(0, 3)];
  return out;
}

}  // namespace srl::test

#endif  // SRL_TESTS_FIXTURES_HPP
