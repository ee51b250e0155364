#include "nls/field.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nls {

Field::Field(Grid g, ComplexArray v, double t)
    : grid(std::move(g)), values(std::move(v)), time(t) {
  if (values.size() != grid.total_points())
    throw std::invalid_argument("Field: value count does not match grid");
}

SpectralField::SpectralField(Grid g, ComplexArray c, double t)
    : grid(std::move(g)), coeffs(std::move(c)), time(t) {
  if (coeffs.size() != grid.total_points())
    throw std::invalid_argument("SpectralField: coefficient count does not match grid");
}

bool all_finite(const ComplexArray& values) {
  return values.real().allFinite() && values.imag().allFinite();
}

void require_finite(const Field& f, const char* context) {
  if (!all_finite(f.values))
    throw std::runtime_error(std::string(context) + ": non-finite field values");
}

namespace {

// Locale-independent shortest round-trip formatting.
std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc())
    throw std::runtime_error("snapshot: cannot parse number '" + s + "'");
  return v;
}

std::string join_axis(const Grid& g, bool points) {
  std::string out;
  for (int a = 0; a < g.dim(); ++a) {
    if (a) out += ",";
    out += points ? std::to_string(g.points(a)) : format_double(g.length(a));
  }
  return out;
}

}  // namespace

void save_snapshot(const std::filesystem::path& path, const Field& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path.string());
  out << "# nls-field v1 dim=" << f.grid.dim() << " N=" << join_axis(f.grid, true)
      << " L=" << join_axis(f.grid, false) << " t=" << format_double(f.time) << "\n";
  for (Eigen::Index j = 0; j < f.values.size(); ++j)
    out << format_double(f.values[j].real()) << " "
        << format_double(f.values[j].imag()) << "\n";
}

Field load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string hash, tag, token;
  hs >> hash >> tag;
  if (hash != "#" || tag != "nls-field")
    throw std::runtime_error("snapshot: bad header in " + path.string());
  int dim = 0;
  std::array<int, 2> n{1, 1};
  std::array<double, 2> length{1.0, 1.0};
  double t = 0.0;
  while (hs >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "dim") {
      dim = std::stoi(value);
    } else if (key == "N" || key == "L") {
      std::istringstream vs(value);
      std::string part;
      for (int a = 0; std::getline(vs, part, ','); ++a) {
        if (a > 1) throw std::runtime_error("snapshot: too many axes");
        if (key == "N")
          n[a] = std::stoi(part);
        else
          length[a] = parse_double(part);
      }
    } else if (key == "t") {
      t = parse_double(value);
    }
  }
  Grid grid(dim, n, length);
  ComplexArray values(grid.total_points());
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    std::string re, im;
    if (!(in >> re >> im))
      throw std::runtime_error("snapshot: truncated data in " + path.string());
    values[j] = Complex(parse_double(re), parse_double(im));
  }
  return Field(grid, std::move(values), t);
}

}  // namespace nls
