#include "qmhd/io.hpp"

#include <cmath>
#include <sstream>

namespace qmhd {

std::vector<std::string> snapshot_columns(int dim) {
  std::vector<std::string> c{"x"};
  if (dim == 2) c.push_back("y");
  for (const char* n : {"rho", "u1", "u2", "u3", "theta", "B1", "B2", "B3", "p"}) c.emplace_back(n);
  return c;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i];
  }
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.precision(17);
  return out;
}

}  // namespace

void write_snapshot(const std::string& path, const FieldState& s, const EosModel& eos) {
  std::ofstream out = open_out(path);
  out << join(snapshot_columns(s.grid.dim())) << '\n';
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const Vec3 x = s.grid.center(k);
    out << x[0];
    if (s.grid.dim() == 2) out << ',' << x[1];
    const Vec3& u = s.u[k];
    const Vec3& b = s.B[k];
    out << ',' << s.rho[k] << ',' << u[0] << ',' << u[1] << ',' << u[2] << ',' << s.theta[k] << ','
        << b[0] << ',' << b[1] << ',' << b[2] << ',' << eos.pressure(s.rho[k], s.theta[k]) << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing snapshot '" + path + "'");
}

FieldState read_snapshot(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read snapshot '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("snapshot '" + path + "' is empty");
  const auto cols = snapshot_columns(grid.dim());
  if (line != join(cols))
    throw ConfigError("snapshot header does not match a " + std::to_string(grid.dim()) + "D grid");
  FieldState s(grid);
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (k >= grid.size()) throw ShapeError("snapshot has more rows than grid cells");
    std::vector<double> v;
    std::istringstream is(line);
    std::string item;
    while (std::getline(is, item, ',')) {
      try {
        v.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw IoError("malformed number '" + item + "' in snapshot row " + std::to_string(k + 1));
      }
    }
    if (v.size() != cols.size())
      throw IoError("snapshot row " + std::to_string(k + 1) + " has wrong column count");
    const Vec3 x = grid.center(k);
    const std::size_t off = grid.dim() == 2 ? 2 : 1;
    for (int a = 0; a < grid.dim(); ++a)
      if (std::fabs(v[static_cast<std::size_t>(a)] - x[a]) > 1e-9 * std::fmax(1.0, std::fabs(x[a])))
        throw ShapeError("snapshot coordinates do not match the configured grid");
    s.rho[k] = v[off];
    s.u[k] = Vec3{v[off + 1], v[off + 2], v[off + 3]};
    s.theta[k] = v[off + 4];
    s.B[k] = Vec3{v[off + 5], v[off + 6], v[off + 7]};
    ++k;
  }
  if (k != grid.size()) throw ShapeError("snapshot has fewer rows than grid cells");
  return s;
}

std::string audit_header() {
  return "step,t,mass,mom1,mom2,mom3,energy,entropy,entropy_corrected,max_divB,min_xi,equiv_err,"
         "res_internal_energy,res_entropy";
}

std::string format_audit_row(const AuditRow& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.step << ',' << r.t << ',' << r.mass << ',' << r.momentum[0] << ',' << r.momentum[1]
     << ',' << r.momentum[2] << ',' << r.energy << ',' << r.entropy << ',' << r.entropy_corrected
     << ',' << r.max_div_B << ',' << r.min_xi << ',' << r.equiv_err << ','
     << r.res_internal_energy << ',' << r.res_entropy;
  return os.str();
}

AuditWriter::AuditWriter(const std::string& path) : out_(open_out(path)), path_(path) {
  out_ << audit_header() << '\n';
  out_.flush();
  if (!out_) throw IoError("failed writing '" + path_ + "'");
}

void AuditWriter::write(const AuditRow& row) {
  out_ << format_audit_row(row) << '\n';
  out_.flush();
  if (!out_) throw IoError("failed writing '" + path_ + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace qmhd
