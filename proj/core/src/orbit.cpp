#include "qpj/orbit.hpp"

#include <cmath>

#include "qpj/errors.hpp"

namespace qpj {

namespace {

double rotation_number(const Frequency& k, const std::vector<double>& alpha) {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    s += static_cast<double>(k[i]) * alpha[i];
  }
  return frac(s);
}

double phase_of(const Frequency& k, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<double>(k[i]) * x[i];
  return s;
}

}  // namespace

OrbitTable::OrbitTable(const JacobiModel& m, long block) : model_(&m), block_(block) {
  if (block < 1) throw UsageError("OrbitTable: block must be positive");
  auto build = [&](const TrigPoly& p, std::vector<TermTable>& out) {
    for (const auto& t : p.terms()) {
      TermTable tt{t.k, t.a, std::vector<cplx>(static_cast<std::size_t>(block))};
      const double theta = rotation_number(t.k, m.alpha());
      for (long j = 0; j < block; ++j) {
        tt.powers[static_cast<std::size_t>(j)] = unit_phase(shift_coordinate(0.0, theta, j));
      }
      out.push_back(std::move(tt));
    }
  };
  build(m.c(), c_terms_);
  build(m.v(), v_terms_);
}

Orbit::Orbit(const OrbitTable& table, TorusPoint x)
    : table_(&table),
      x_(std::move(x)),
      c_base_(table.c_terms_.size()),
      v_base_(table.v_terms_.size()) {
  if (static_cast<int>(x_.size()) != table.model().dim()) {
    throw UsageError("Orbit: point dimension does not match model");
  }
}

void Orbit::load_block(long b) {
  const TorusPoint anchor = table_->model().translate(x_, b * table_->block_);
  for (std::size_t t = 0; t < c_base_.size(); ++t) {
    c_base_[t] = table_->c_terms_[t].a * unit_phase(phase_of(table_->c_terms_[t].k, anchor));
  }
  for (std::size_t t = 0; t < v_base_.size(); ++t) {
    v_base_[t] = table_->v_terms_[t].a * unit_phase(phase_of(table_->v_terms_[t].k, anchor));
  }
  current_ = b;
  loaded_ = true;
}

cplx Orbit::c(long n) {
  const long blk = table_->block_;
  const long b = n >= 0 ? n / blk : -((-n + blk - 1) / blk);
  if (!loaded_ || b != current_) load_block(b);
  const auto j = static_cast<std::size_t>(n - b * blk);
  if (j == 0) {
    cplx s = 0.0;
    for (const auto& cb : c_base_) s += cb;
    return s;
  }
  cplx s = 0.0;
  for (std::size_t t = 0; t < c_base_.size(); ++t) s += c_base_[t] * table_->c_terms_[t].powers[j];
  return s;
}

double Orbit::v(long n) {
  const long blk = table_->block_;
  const long b = n >= 0 ? n / blk : -((-n + blk - 1) / blk);
  if (!loaded_ || b != current_) load_block(b);
  const auto j = static_cast<std::size_t>(n - b * blk);
  double s = 0.0;
  if (j == 0) {
    for (const auto& vb : v_base_) s += vb.real();
    return s;
  }
  for (std::size_t t = 0; t < v_base_.size(); ++t) {
    s += (v_base_[t] * table_->v_terms_[t].powers[j]).real();
  }
  return s;
}

}  // namespace qpj
