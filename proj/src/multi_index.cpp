#include "chargedef/multi_index.hpp"

#include <sstream>

#include "chargedef/error.hpp"

namespace chargedef {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotOnSphere: return "NotOnSphere";
    case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotFredholm: return "NotFredholm";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::NotUnitarySymbol: return "NotUnitarySymbol";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::NotInvertibleOnCircle: return "NotInvertibleOnCircle";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::MismatchExceedsTolerance: return "MismatchExceedsTolerance";
  }
  return "Unknown";
}

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDimension) {
    fail(ErrorKind::CapacityExceeded,
         "dimension " + std::to_string(dim) + " outside [1, " + std::to_string(kMaxDimension) + "]");
  }
}

}  // namespace

MultiIndex::MultiIndex(int dim) : dim_(dim) { check_dim(dim); }

MultiIndex::MultiIndex(std::initializer_list<int> entries) : dim_(static_cast<int>(entries.size())) {
  check_dim(dim_);
  int i = 0;
  for (int e : entries) entries_[static_cast<std::size_t>(i++)] = e;
}

MultiIndex MultiIndex::from_vector(const std::vector<int>& entries) {
  MultiIndex m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.dim_; ++i) m[i] = entries[static_cast<std::size_t>(i)];
  return m;
}

MultiIndex MultiIndex::unit(int dim, int j) {
  if (j < 1 || j > dim) {
    fail(ErrorKind::IndexOutOfRange,
         "coordinate index " + std::to_string(j) + " outside [1, " + std::to_string(dim) + "]");
  }
  MultiIndex m(dim);
  m[j - 1] = 1;
  return m;
}

int MultiIndex::total() const noexcept {
  int s = 0;
  for (int i = 0; i < dim_; ++i) s += entries_[static_cast<std::size_t>(i)];
  return s;
}

bool MultiIndex::nonnegative() const noexcept {
  for (int i = 0; i < dim_; ++i) {
    if (entries_[static_cast<std::size_t>(i)] < 0) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dim_ != other.dim_) fail(ErrorKind::DimensionMismatch, "multi-index dimension mismatch");
  MultiIndex r = *this;
  for (int i = 0; i < dim_; ++i) r[i] += other[i];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (dim_ != other.dim_) fail(ErrorKind::DimensionMismatch, "multi-index dimension mismatch");
  MultiIndex r = *this;
  for (int i = 0; i < dim_; ++i) r[i] -= other[i];
  return r;
}

std::vector<int> MultiIndex::to_vector() const {
  return {entries_.begin(), entries_.begin() + dim_};
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim_; ++i) {
    if (i) os << ',';
    os << entries_[static_cast<std::size_t>(i)];
  }
  os << ')';
  return os.str();
}

bool graded_less(const MultiIndex& a, const MultiIndex& b) {
  const int ta = a.total();
  const int tb = b.total();
  if (ta != tb) return ta < tb;
  return a < b;
}

std::vector<MultiIndex> multi_indices_of_degree(int dim, int degree) {
  std::vector<MultiIndex> out;
  if (degree < 0) return out;
  MultiIndex m(dim);
  // Recursive fill of entries 0..dim-1 summing to `degree`, ascending lexicographic.
  auto fill = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == dim - 1) {
      m[pos] = remaining;
      out.push_back(m);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      m[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  fill(fill, 0, degree);
  return out;
}

std::vector<MultiIndex> graded_multi_indices(int dim, int max_degree) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto layer = multi_indices_of_degree(dim, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace chargedef
