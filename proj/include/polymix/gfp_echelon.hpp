#pragma once

// Incremental row echelon form over F_p.
//
// Rows are inserted one at a time and reduced against the stored pivots by
// their leading column. Each stored row keeps only the column range it
// actually touches, so constraint systems whose rows are translates of one
// stencil (banded matrices) cost O(rows · band²), or O(rows · band²/64) over
// F_2 where rows are bit-packed.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "polymix/modular.hpp"

namespace polymix {

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

class GfpEchelon {
 public:
  GfpEchelon(FieldSpec field, std::size_t columns) : F_(field), pivot_of_(columns, -1) {}

  std::size_t columns() const noexcept { return pivot_of_.size(); }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool consistent() const noexcept { return consistent_; }

  // Returns true when the row is independent of the rows seen so far.
  bool insert(const SparseRow& entries, Scalar rhs = 0) {
    if (entries.empty()) {
      if (rhs % F_.p() != 0) consistent_ = false;
      return false;
    }
    std::size_t lo = entries.front().first, hi = lo;
    for (const auto& [c, v] : entries) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    std::vector<Scalar> work(hi - lo + 1, 0);
    for (const auto& [c, v] : entries) work[c - lo] = F_.add(work[c - lo], v % F_.p());
    rhs %= F_.p();

    std::size_t cur = 0;
    for (;;) {
      while (cur < work.size() && work[cur] == 0) ++cur;
      if (cur == work.size()) {
        if (rhs != 0) consistent_ = false;
        return false;
      }
      const std::size_t col = lo + cur;
      const int pr = pivot_of_[col];
      if (pr < 0) {
        std::size_t end = work.size();
        while (work[end - 1] == 0) --end;
        const Scalar inv = F_.inv(work[cur]);
        Row row{col, {}, F_.mul(rhs, inv)};
        row.values.reserve(end - cur);
        for (std::size_t j = cur; j < end; ++j) row.values.push_back(F_.mul(work[j], inv));
        pivot_of_[col] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        return true;
      }
      const Row& p = rows_[pr];
      const Scalar factor = work[cur];
      const std::size_t need = p.start - lo + p.values.size();
      if (need > work.size()) work.resize(need, 0);
      for (std::size_t j = 0; j < p.values.size(); ++j) {
        auto& w = work[p.start - lo + j];
        w = F_.sub(w, F_.mul(factor, p.values[j]));
      }
      rhs = F_.sub(rhs, F_.mul(factor, p.rhs));
    }
  }

  // Basis of the homogeneous solution space, one vector per free column.
  std::vector<std::vector<Scalar>> nullspace() const {
    std::vector<std::vector<Scalar>> basis;
    const std::size_t n = columns();
    std::vector<std::size_t> order;  // pivot rows by decreasing leading column
    for (std::size_t c = n; c-- > 0;) {
      if (pivot_of_[c] >= 0) order.push_back(static_cast<std::size_t>(pivot_of_[c]));
    }
    for (std::size_t free = 0; free < n; ++free) {
      if (pivot_of_[free] >= 0) continue;
      std::vector<Scalar> x(n, 0);
      x[free] = 1;
      for (auto r : order) {
        const Row& row = rows_[r];
        Scalar s = 0;
        for (std::size_t j = 1; j < row.values.size(); ++j) {
          s = F_.add(s, F_.mul(row.values[j], x[row.start + j]));
        }
        x[row.start] = F_.neg(s);
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  struct Row {
    std::size_t start;
    std::vector<Scalar> values;  // values[0] == 1
    Scalar rhs;
  };

  FieldSpec F_;
  std::vector<int> pivot_of_;
  std::vector<Row> rows_;
  bool consistent_ = true;
};

// The same contract over F_2 with 64 columns per machine word.
class Gf2Echelon {
 public:
  explicit Gf2Echelon(std::size_t columns) : pivot_of_(columns, -1) {}

  std::size_t columns() const noexcept { return pivot_of_.size(); }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool consistent() const noexcept { return consistent_; }

  bool insert(const SparseRow& entries, Scalar rhs_in = 0) {
    bool rhs = rhs_in & 1;
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& [c, v] : entries) {
      if (v & 1) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
    }
    if (lo == SIZE_MAX) {
      if (rhs) consistent_ = false;
      return false;
    }
    const std::size_t w0 = lo / 64;
    std::vector<std::uint64_t> work(hi / 64 - w0 + 1, 0);
    for (const auto& [c, v] : entries) {
      if (v & 1) work[c / 64 - w0] ^= std::uint64_t{1} << (c % 64);
    }
    std::size_t wi = 0;
    for (;;) {
      while (wi < work.size() && work[wi] == 0) ++wi;
      if (wi == work.size()) {
        if (rhs) consistent_ = false;
        return false;
      }
      const std::size_t col = (w0 + wi) * 64 + static_cast<std::size_t>(std::countr_zero(work[wi]));
      const int pr = pivot_of_[col];
      if (pr < 0) {
        std::size_t end = work.size();
        while (work[end - 1] == 0) --end;
        Row row{w0 + wi, std::vector<std::uint64_t>(work.begin() + wi, work.begin() + end), rhs};
        pivot_of_[col] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        return true;
      }
      const Row& p = rows_[pr];
      const std::size_t need = p.word - w0 + p.words.size();
      if (need > work.size()) work.resize(need, 0);
      for (std::size_t j = 0; j < p.words.size(); ++j) work[p.word - w0 + j] ^= p.words[j];
      rhs ^= p.rhs;
    }
  }

  std::vector<std::vector<Scalar>> nullspace() const {
    std::vector<std::vector<Scalar>> basis;
    const std::size_t n = columns();
    std::vector<std::size_t> order;
    for (std::size_t c = n; c-- > 0;) {
      if (pivot_of_[c] >= 0) order.push_back(c);
    }
    for (std::size_t free = 0; free < n; ++free) {
      if (pivot_of_[free] >= 0) continue;
      std::vector<Scalar> x(n, 0);
      x[free] = 1;
      for (auto col : order) {
        const Row& row = rows_[pivot_of_[col]];
        Scalar s = 0;
        for (std::size_t j = 0; j < row.words.size(); ++j) {
          std::uint64_t bits = row.words[j];
          while (bits) {
            const std::size_t c = (row.word + j) * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            if (c != col) s ^= x[c];
          }
        }
        x[col] = s;
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  struct Row {
    std::size_t word;  // index of the first stored word
    std::vector<std::uint64_t> words;
    bool rhs;
  };

  std::vector<int> pivot_of_;
  std::vector<Row> rows_;
  bool consistent_ = true;
};

// Calls fn with the echelon engine suited to the field.
template <class Fn>
decltype(auto) with_echelon(FieldSpec field, std::size_t columns, Fn&& fn) {
  if (field.p() == 2) {
    Gf2Echelon e(columns);
    return fn(e);
  }
  GfpEchelon e(field, columns);
  return fn(e);
}

}  // namespace polymix
