#include "linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace cartan {

SparseRow row_add_scaled(const SparseRow& a, const SparseRow& b, const Rat& c) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Rat v = b[j].second * c;
      if (!is_zero(v)) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      Rat v = a[i].second + b[j].second * c;
      if (!is_zero(v)) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseRow row_scaled(const SparseRow& a, const Rat& c) {
  SparseRow out;
  if (is_zero(c)) return out;
  out.reserve(a.size());
  for (const auto& [col, v] : a) out.emplace_back(col, v * c);
  return out;
}

Rat row_dot(const SparseRow& a, const SparseRow& b) {
  Rat acc = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first)
      ++i;
    else if (b[j].first < a[i].first)
      ++j;
    else {
      acc += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return acc;
}

SparseRow RowEchelon::reduce(SparseRow row, SparseRow* aug_out) const {
  SparseRow aug;
  // Eliminations proceed in increasing pivot-column order: cancelling a pivot
  // introduces only free columns, which never need further reduction.
  int last_col = -1;
  while (true) {
    size_t hit = row.size();
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i].first <= last_col) continue;
      if (pivot_of_col_.count(row[i].first)) {
        hit = i;
        break;
      }
    }
    if (hit == row.size()) break;
    last_col = row[hit].first;
    int idx = pivot_of_col_.at(row[hit].first);
    Rat factor = -row[hit].second;  // pivot entries are 1
    row = row_add_scaled(row, rows_[idx], factor);
    if (aug_out) aug = row_add_scaled(aug, augs_[idx], factor);
  }
  if (aug_out) *aug_out = std::move(aug);
  return row;
}

bool RowEchelon::insert(SparseRow row, SparseRow aug) {
  SparseRow racc;
  row = reduce(std::move(row), &racc);
  if (row.empty()) return false;
  aug = row_add_scaled(aug, racc, 1);
  Rat inv = 1 / row.front().second;
  row = row_scaled(row, inv);
  aug = row_scaled(aug, inv);
  int pcol = row.front().first;
  // Back-substitute into existing rows to keep the form fully reduced.
  for (size_t k = 0; k < rows_.size(); ++k) {
    auto it = std::lower_bound(rows_[k].begin(), rows_[k].end(),
                               std::make_pair(pcol, Rat(0)),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == rows_[k].end() || it->first != pcol) continue;
    Rat factor = -it->second;
    rows_[k] = row_add_scaled(rows_[k], row, factor);
    augs_[k] = row_add_scaled(augs_[k], aug, factor);
  }
  pivot_of_col_[pcol] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  augs_.push_back(std::move(aug));
  return true;
}

std::vector<SparseRow> nullspace_of_rows(const std::vector<SparseRow>& rows, int ncols) {
  RowEchelon ech;
  for (const auto& r : rows) ech.insert(r);
  // Free columns: those without a pivot.
  std::vector<SparseRow> basis;
  const auto& pivots = ech.pivots();
  for (int c = 0; c < ncols; ++c) {
    if (pivots.count(c)) continue;
    SparseRow v;
    v.emplace_back(c, Rat(1));
    // For each pivot row with nonzero entry in column c, set the pivot
    // variable to cancel it.
    for (const auto& [pcol, ridx] : pivots) {
      const SparseRow& row = ech.rows()[ridx];
      auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, Rat(0)),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
      if (it != row.end() && it->first == c && !is_zero(it->second))
        v.emplace_back(pcol, -it->second);
    }
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix::RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

void RationalMatrix::set(int r, int c, const Rat& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("RationalMatrix::set");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, Rat(0)),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != row.end() && it->first == c) {
    if (is_zero(v))
      row.erase(it);
    else
      it->second = v;
  } else if (!is_zero(v)) {
    row.insert(it, {c, v});
  }
}

Rat RationalMatrix::get(int r, int c) const {
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, Rat(0)),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

void RationalMatrix::set_row(int r, SparseRow row) { data_[r] = std::move(row); }

namespace {

using IntRow = std::vector<std::pair<int, mpz_class>>;

IntRow to_integer_row(const SparseRow& row) {
  mpz_class lcm = 1;
  for (const auto& [c, v] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    mpz_class num = v.get_num() * (lcm / mpz_class(v.get_den()));
    out.emplace_back(c, num);
  }
  return out;
}

const mpz_class* find_col(const IntRow& row, int c) {
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, mpz_class(0)),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != row.end() && it->first == c) return &it->second;
  return nullptr;
}

// One fraction-free (Bareiss) elimination pass. Returns echelon rows with
// pivot columns, in elimination order. Deterministic pivoting: columns left
// to right, first remaining row with a nonzero entry.
struct BareissResult {
  std::vector<IntRow> echelon;
  std::vector<int> pivot_cols;
};

BareissResult bareiss(std::vector<IntRow> rows, int ncols) {
  BareissResult res;
  mpz_class prev_pivot = 1;
  for (int col = 0; col < ncols && !rows.empty(); ++col) {
    size_t pivot_idx = rows.size();
    for (size_t r = 0; r < rows.size(); ++r) {
      if (find_col(rows[r], col)) {
        pivot_idx = r;
        break;
      }
    }
    if (pivot_idx == rows.size()) continue;
    IntRow pivot_row = std::move(rows[pivot_idx]);
    rows.erase(rows.begin() + pivot_idx);
    const mpz_class pivot = *find_col(pivot_row, col);
    for (auto& row : rows) {
      const mpz_class* entry = find_col(row, col);
      // a'_rc = (a_rc * p - a_rp * p_c) / prev_pivot  (exact division)
      IntRow updated;
      updated.reserve(row.size() + pivot_row.size());
      size_t i = 0, j = 0;
      mpz_class arp = entry ? *entry : mpz_class(0);
      while (i < row.size() || j < pivot_row.size()) {
        int ci = i < row.size() ? row[i].first : ncols;
        int cj = j < pivot_row.size() ? pivot_row[j].first : ncols;
        int c = std::min(ci, cj);
        mpz_class a = ci == c ? row[i].second : mpz_class(0);
        mpz_class b = cj == c ? pivot_row[j].second : mpz_class(0);
        if (ci == c) ++i;
        if (cj == c) ++j;
        if (c == col) continue;  // eliminated
        mpz_class v = a * pivot - arp * b;
        if (v != 0) {
          mpz_class q;
          mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), prev_pivot.get_mpz_t());
          updated.emplace_back(c, q);
        }
      }
      row = std::move(updated);
    }
    prev_pivot = pivot;
    res.pivot_cols.push_back(col);
    res.echelon.push_back(std::move(pivot_row));
  }
  return res;
}

}  // namespace

int RationalMatrix::rank() const {
  std::vector<IntRow> rows;
  rows.reserve(data_.size());
  for (const auto& r : data_)
    if (!r.empty()) rows.push_back(to_integer_row(r));
  return static_cast<int>(bareiss(std::move(rows), cols_).pivot_cols.size());
}

std::vector<std::vector<Rat>> RationalMatrix::nullspace() const {
  std::vector<IntRow> rows;
  for (const auto& r : data_)
    if (!r.empty()) rows.push_back(to_integer_row(r));
  BareissResult res = bareiss(std::move(rows), cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : res.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rat> v(cols_, Rat(0));
    v[free_col] = 1;
    // Back-substitution through the echelon, bottom-up.
    for (int k = static_cast<int>(res.echelon.size()) - 1; k >= 0; --k) {
      const IntRow& row = res.echelon[k];
      int pcol = res.pivot_cols[k];
      Rat acc = 0;
      for (const auto& [c, a] : row) {
        if (c == pcol) continue;
        if (!is_zero(v[c])) acc += Rat(a) * v[c];
      }
      const mpz_class* p = find_col(row, pcol);
      v[pcol] = -acc / Rat(*p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> RationalMatrix::solve(const std::vector<Rat>& b) const {
  if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("solve: dimension mismatch");
  // Augmented elimination with the rational echelon (simpler consistency
  // handling); the Bareiss path stays the rank/nullspace backend.
  // Augmented rows (a | -b) are homogeneous in (x, 1): a.x - b = 0.
  RowEchelon ech;
  int bcol = cols_;
  for (int r = 0; r < rows_; ++r) {
    SparseRow row = data_[r];
    if (!is_zero(b[r])) row.emplace_back(bcol, -b[r]);
    ech.insert(std::move(row));
  }
  if (ech.pivots().count(bcol)) return std::nullopt;  // 1 = 0 row
  std::vector<Rat> x(cols_, Rat(0));
  for (const auto& [pcol, ridx] : ech.pivots()) {
    // Fully reduced pivot row: x_p + sum_{free} v_c x_c + v_b = 0.
    for (const auto& [c, v] : ech.rows()[ridx])
      if (c == bcol) x[pcol] = -v;
  }
  return x;
}

bool in_span(const SparseRow& v, const std::vector<SparseRow>& basis) {
  RowEchelon ech;
  for (const auto& b : basis) ech.insert(b);
  return ech.contains(v);
}

bool span_equal(const std::vector<SparseRow>& a, const std::vector<SparseRow>& b) {
  RowEchelon ea, eb;
  for (const auto& r : a) ea.insert(r);
  for (const auto& r : b) eb.insert(r);
  if (ea.rank() != eb.rank()) return false;
  for (const auto& r : a)
    if (!eb.contains(r)) return false;
  return true;
}

int CoordIndex::id(int r, const Mono& mono) {
  auto key = std::make_pair(r, mono);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  int next = static_cast<int>(keys_.size());
  ids_.emplace(key, next);
  keys_.push_back(key);
  return next;
}

std::optional<int> CoordIndex::lookup(int r, const Mono& mono) const {
  auto it = ids_.find(std::make_pair(r, mono));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

SparseRow field_coords(const VectorField& D, CoordIndex& index) {
  SparseRow row;
  for (int r = 1; r <= D.sig().dim(); ++r)
    for (const auto& [mono, c] : D.coeff(r).terms())
      row.emplace_back(index.id(r, mono), c);
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

VectorField field_from_coords(const SparseRow& row, const CoordIndex& index,
                              const Signature& sig) {
  VectorField D(sig);
  for (const auto& [col, v] : row) {
    const auto& [r, mono] = index.key(col);
    D.coeff(r).add_term(mono, v);
  }
  return D;
}

bool FieldSpan::add(const VectorField& v) {
  SparseRow row = field_coords(v, *index_);
  if (row.empty()) return false;
  SparseRow aug;
  aug.emplace_back(dim(), Rat(1));
  if (!ech_.insert(std::move(row), std::move(aug))) return false;
  basis_.push_back(v);
  return true;
}

bool FieldSpan::contains(const VectorField& v) const {
  SparseRow row;
  for (int r = 1; r <= v.sig().dim(); ++r)
    for (const auto& [mono, c] : v.coeff(r).terms()) {
      auto col = index_->lookup(r, mono);
      if (!col) return false;  // coordinate outside the span's support
      row.emplace_back(*col, c);
    }
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return ech_.contains(row);
}

std::optional<std::vector<Rat>> FieldSpan::coords_of(const VectorField& v) const {
  SparseRow row;
  for (int r = 1; r <= v.sig().dim(); ++r)
    for (const auto& [mono, c] : v.coeff(r).terms()) {
      auto col = index_->lookup(r, mono);
      if (!col) return std::nullopt;
      row.emplace_back(*col, c);
    }
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow aug;
  SparseRow res = ech_.reduce(std::move(row), &aug);
  if (!res.empty()) return std::nullopt;
  std::vector<Rat> coords(dim(), Rat(0));
  for (const auto& [i, c] : aug) coords[i] = -c;
  return coords;
}

bool FieldSpan::equals(const FieldSpan& o) const {
  if (dim() != o.dim()) return false;
  for (const auto& b : basis_)
    if (!o.contains(b)) return false;
  return true;
}

}  // namespace cartan
