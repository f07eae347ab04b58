#include "gprates/pointset.hpp"

#include "gprates/csv.hpp"

#include <sstream>

namespace gprates {

Domain::Domain(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() == 0 || lower_.size() != upper_.size()) {
    throw ConfigError("domain: lower and upper must be nonempty and of equal dimension");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw ConfigError("domain: lower[" + std::to_string(i) + "] must be < upper[" +
                        std::to_string(i) + "]");
    }
  }
}

Domain Domain::unit_cube(int dim) { return Domain(Vector::Zero(dim), Vector::Ones(dim)); }

double Domain::volume() const { return width().prod(); }

bool Domain::contains_open(const Eigen::Ref<const Vector>& x) const {
  return x.size() == lower_.size() && (x.array() > lower_.array()).all() &&
         (x.array() < upper_.array()).all();
}

bool Domain::contains_closed(const Eigen::Ref<const Vector>& x) const {
  return x.size() == lower_.size() && (x.array() >= lower_.array()).all() &&
         (x.array() <= upper_.array()).all();
}

PointSet::PointSet(Matrix points, Domain domain) : points_(std::move(points)), domain_(std::move(domain)) {
  if (points_.rows() > 0 && points_.cols() != domain_.dim()) {
    throw ConfigError("point set: point dimension does not match domain dimension");
  }
  if (points_.rows() == 0) points_.resize(0, domain_.dim());
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    if (!domain_.contains_open(points_.row(i).transpose())) {
      throw ConfigError("point set: point " + std::to_string(i) + " is not strictly inside the domain");
    }
  }
}

PointSet PointSet::with_metrics(const DesignMetrics& m) const {
  PointSet copy = *this;
  copy.metrics_ = m;
  return copy;
}

PointSet PointSet::prefix(int count) const {
  return PointSet(points_.topRows(count), domain_);
}

PointSet PointSet::subset(const std::vector<int>& indices) const {
  Matrix sub(static_cast<Eigen::Index>(indices.size()), dim());
  for (std::size_t k = 0; k < indices.size(); ++k) sub.row(static_cast<Eigen::Index>(k)) = points_.row(indices[k]);
  return PointSet(std::move(sub), domain_);
}

std::string PointSet::to_csv() const {
  std::ostringstream out;
  CsvWriter csv(out);
  std::vector<std::string> header;
  for (int j = 0; j < dim(); ++j) header.push_back("x" + std::to_string(j + 1));
  csv.header(header);
  for (int i = 0; i < size(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(dim()));
    for (int j = 0; j < dim(); ++j) row[static_cast<std::size_t>(j)] = points_(i, j);
    csv.row(row);
  }
  return out.str();
}

}  // namespace gprates
