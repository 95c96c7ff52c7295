#pragma once

#include <map>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "superpoly.hpp"
#include "vectorfield.hpp"

namespace cartan {

// Sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<int, Rat>>;

SparseRow row_add_scaled(const SparseRow& a, const SparseRow& b, const Rat& c);
SparseRow row_scaled(const SparseRow& a, const Rat& c);
Rat row_dot(const SparseRow& a, const SparseRow& b);

// Incrementally maintained reduced row echelon form over Q. Pivot rule:
// lowest available column, rows kept fully reduced, pivots normalized to 1.
// Optionally tracks an augmented part (used to recover coordinates of a
// vector with respect to the originally inserted rows).
class RowEchelon {
 public:
  // Returns true if the row was independent (rank grew).
  bool insert(SparseRow row, SparseRow aug = {});
  // Residual of row after reduction; aug_out accumulates the combination.
  SparseRow reduce(SparseRow row, SparseRow* aug_out = nullptr) const;
  bool contains(const SparseRow& row) const { return reduce(row).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseRow>& rows() const { return rows_; }
  const std::vector<SparseRow>& augs() const { return augs_; }
  const std::map<int, int>& pivots() const { return pivot_of_col_; }

 private:
  std::vector<SparseRow> rows_;
  std::vector<SparseRow> augs_;
  std::map<int, int> pivot_of_col_;  // pivot column -> row index
};

// Reduced-echelon nullspace basis of the system {rows} over ncols variables.
// Deterministic: free columns in increasing order, each basis vector has 1 in
// its free column.
std::vector<SparseRow> nullspace_of_rows(const std::vector<SparseRow>& rows, int ncols);

// Exact rational matrix with fraction-free (Bareiss) elimination backing
// rank / nullspace / solve. Dense enough workloads only; the incremental
// RowEchelon above is the tool for large sparse systems.
class RationalMatrix {
 public:
  RationalMatrix(int rows, int cols);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  void set(int r, int c, const Rat& v);
  Rat get(int r, int c) const;
  const std::vector<SparseRow>& row_data() const { return data_; }
  void set_row(int r, SparseRow row);

  int rank() const;
  std::vector<std::vector<Rat>> nullspace() const;  // dense basis vectors
  // Particular solution of A x = b with free variables set to 0, or nullopt
  // if inconsistent.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

 private:
  int rows_, cols_;
  std::vector<SparseRow> data_;
};

bool in_span(const SparseRow& v, const std::vector<SparseRow>& basis);
bool span_equal(const std::vector<SparseRow>& a, const std::vector<SparseRow>& b);

// Canonical coordinate numbering for vector fields: one column per
// (component index r, monomial) pair, assigned on first use.
class CoordIndex {
 public:
  int id(int r, const Mono& mono);
  std::optional<int> lookup(int r, const Mono& mono) const;
  int size() const { return static_cast<int>(keys_.size()); }
  const std::pair<int, Mono>& key(int id) const { return keys_[id]; }

 private:
  std::map<std::pair<int, Mono>, int> ids_;
  std::vector<std::pair<int, Mono>> keys_;
};

SparseRow field_coords(const VectorField& D, CoordIndex& index);
VectorField field_from_coords(const SparseRow& row, const CoordIndex& index,
                              const Signature& sig);

// Span of vector fields with membership and coordinate queries; keeps the
// first-come independent subset of the added generators as its basis.
class FieldSpan {
 public:
  explicit FieldSpan(CoordIndex* index) : index_(index) {}
  bool add(const VectorField& v);  // true if v enlarged the span
  bool contains(const VectorField& v) const;
  std::optional<std::vector<Rat>> coords_of(const VectorField& v) const;
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<VectorField>& basis() const { return basis_; }
  bool equals(const FieldSpan& o) const;

 private:
  CoordIndex* index_;
  RowEchelon ech_;
  std::vector<VectorField> basis_;
};

}  // namespace cartan
