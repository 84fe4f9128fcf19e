#pragma once

#include <memory>
#include <vector>

#include "qpj/model.hpp"

namespace qpj {

// Phase factors exp(2 pi i j (k.alpha)), 0 <= j < block, for every frequency k
// occurring in c or v. Shared read-only between threads.
class OrbitTable {
 public:
  explicit OrbitTable(const JacobiModel& m, long block = 4096);

  const JacobiModel& model() const { return *model_; }
  long block() const { return block_; }

 private:
  friend class Orbit;
  struct TermTable {
    Frequency k;
    cplx a;
    std::vector<cplx> powers;
  };
  const JacobiModel* model_;
  long block_;
  std::vector<TermTable> c_terms_;
  std::vector<TermTable> v_terms_;
};

// Samples c(T^n x) and v(T^n x) for integer n. Each block of `block` sites is
// anchored at an exactly translated base point, so rounding does not grow with |n|.
// Not thread-safe (caches the current block); create one per worker.
class Orbit {
 public:
  Orbit(const OrbitTable& table, TorusPoint x);

  const TorusPoint& base() const { return x_; }
  cplx c(long n);
  double v(long n);

 private:
  void load_block(long b);

  const OrbitTable* table_;
  TorusPoint x_;
  long current_ = 0;
  bool loaded_ = false;
  std::vector<cplx> c_base_;
  std::vector<cplx> v_base_;
};

}  // namespace qpj
