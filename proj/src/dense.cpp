#include "qlab/dense.hpp"

#include <map>

namespace qlab {

namespace {

std::vector<LinearOp::Image> images_of(const LinearOp& op, std::span<const Registers> domain) {
  std::vector<LinearOp::Image> images;
  images.reserve(domain.size());
  for (const auto& label : domain) {
    if (!op.in_domain(label)) {
      throw DomainError(op.name() + ": label " + format_registers(label) +
                        " is outside the operator domain");
    }
    images.push_back(op.image(label));
  }
  return images;
}

}  // namespace

DenseMatrix<Complex> gram_matrix(const LinearOp& op, std::span<const Registers> domain) {
  const auto images = images_of(op, domain);
  std::map<Registers, Eigen::Index> index;
  for (const auto& image : images)
    for (const auto& [label, c] : image) index.try_emplace(label, static_cast<Eigen::Index>(index.size()));
  DenseMatrix<Complex> columns = DenseMatrix<Complex>::Zero(static_cast<Eigen::Index>(index.size()),
                                                            static_cast<Eigen::Index>(images.size()));
  for (std::size_t k = 0; k < images.size(); ++k)
    for (const auto& [label, c] : images[k]) columns(index.at(label), static_cast<Eigen::Index>(k)) += c;
  return columns.adjoint() * columns;
}

double isometry_defect(const LinearOp& op, std::span<const Registers> domain) {
  const auto images = images_of(op, domain);
  // Transpose the images: output label -> list of (domain index, coefficient).
  std::map<Registers, std::vector<std::pair<std::size_t, Complex>>> hits;
  for (std::size_t k = 0; k < images.size(); ++k) {
    std::map<Registers, Complex> merged;
    for (const auto& [label, c] : images[k]) merged[label] += c;
    for (const auto& [label, c] : merged) hits[label].emplace_back(k, c);
  }
  std::map<std::pair<std::size_t, std::size_t>, Complex> gram;
  for (const auto& [label, column] : hits)
    for (const auto& [a, ca] : column)
      for (const auto& [b, cb] : column) gram[{a, b}] += std::conj(ca) * cb;
  double defect = 0.0;
  for (std::size_t k = 0; k < images.size(); ++k) {
    auto it = gram.find({k, k});
    const Complex diag = it == gram.end() ? Complex{} : it->second;
    defect = std::max(defect, std::abs(diag - 1.0));
  }
  for (const auto& [ab, value] : gram)
    if (ab.first != ab.second) defect = std::max(defect, std::abs(value));
  return defect;
}

LinearOp dense_op(std::string name, std::vector<Registers> basis, DenseMatrix<Complex> matrix) {
  if (matrix.rows() != static_cast<Eigen::Index>(basis.size()) || matrix.cols() != matrix.rows()) {
    throw std::invalid_argument("dense_op: matrix shape does not match basis size");
  }
  auto index = std::make_shared<std::map<Registers, Eigen::Index>>();
  for (std::size_t k = 0; k < basis.size(); ++k) index->emplace(basis[k], static_cast<Eigen::Index>(k));
  auto shared_basis = std::make_shared<std::vector<Registers>>(std::move(basis));
  auto shared_matrix = std::make_shared<DenseMatrix<Complex>>(std::move(matrix));
  return LinearOp(
      std::move(name),
      [index](std::span<const Register> label) {
        return index->contains(Registers(label.begin(), label.end()));
      },
      [index, shared_basis, shared_matrix](std::span<const Register> label) {
        const Eigen::Index col = index->at(Registers(label.begin(), label.end()));
        LinearOp::Image image;
        for (Eigen::Index r = 0; r < shared_matrix->rows(); ++r) {
          const Complex c = (*shared_matrix)(r, col);
          if (c != Complex{}) image.emplace_back((*shared_basis)[static_cast<std::size_t>(r)], c);
        }
        return image;
      });
}

DenseVector<Complex> to_dense(const PureState& s, std::span<const Registers> basis) {
  DenseVector<Complex> v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) v(static_cast<Eigen::Index>(k)) = s.amplitude(basis[k]);
  return v;
}

}  // namespace qlab
