#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "efie/errors.hpp"
#include "efie/operators.hpp"

namespace efie {

namespace {
constexpr char kMagic[8] = {'E', 'F', 'I', 'E', 'M', 'A', 'T', '1'};
}

void write_matrix_binary(const CMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(m.rows()), static_cast<std::uint64_t>(m.cols())};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  std::vector<float> row(2 * static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row[2 * j] = static_cast<float>(m(i, j).real());
      row[2 * j + 1] = static_cast<float>(m(i, j).imag());
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw Error("write failed for " + path.string());
}

CMatrix read_matrix_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  char magic[8];
  std::uint64_t dims[2];
  in.read(magic, sizeof(magic));
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw Error(path.string() + " is not an EFIEMAT1 file");
  CMatrix m(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
  std::vector<float> row(2 * dims[1]);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in) throw Error(path.string() + " is truncated");
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cdouble(row[2 * j], row[2 * j + 1]);
  }
  return m;
}

void write_matrix_csv(const CMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "row,col,re,im\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << i << ',' << j << ',' << m(i, j).real() << ',' << m(i, j).imag() << '\n';
}

}  // namespace efie
