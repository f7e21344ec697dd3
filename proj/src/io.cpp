#include "gflab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace gflab::io {

std::string format_number(double x) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void fail(const std::filesystem::path& file, std::size_t line,
                       const std::string& what) {
  throw std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);  // binary: no CRLF translation
  if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + file.string());
  return in;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& s, const std::filesystem::path& file,
                    std::size_t line) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e) fail(file, line, "bad number '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, const std::filesystem::path& file,
                    std::size_t line) {
  long long v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e) fail(file, line, "bad integer '" + s + "'");
  return v;
}

std::string coord_header(const GridSpec& g) {
  std::string h;
  for (int k = 0; k < g.dim(); ++k) {
    if (k) h += ',';
    h += 'i';
    h += std::to_string(k);
  }
  return h;
}

// reads the coordinate columns of a row and returns the cell index
std::size_t parse_cell(const std::vector<std::string>& cols, const GridSpec& g,
                       const std::filesystem::path& file, std::size_t line) {
  std::vector<int> xc(g.dim());
  for (int k = 0; k < g.dim(); ++k) {
    const long long v = parse_int(cols[k], file, line);
    if (v < 0 || v >= g.sizes()[k]) fail(file, line, "coordinate out of range");
    xc[k] = static_cast<int>(v);
  }
  return g.index(xc);
}

std::string read_line_checked(std::ifstream& in, const std::filesystem::path& file,
                              std::size_t line, const char* what) {
  std::string s;
  if (!std::getline(in, s)) fail(file, line, std::string("missing ") + what);
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

void write_field_csv(const std::filesystem::path& file, const Field& f) {
  std::ofstream out = open_out(file);
  const GridSpec& g = f.grid();
  out << coord_header(g) << ",component,re,im\n";
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const std::vector<int> xc = g.coords(c);
    for (int j = 0; j < f.fiber_dim(); ++j) {
      const cplx z = f.fiber(c)[j];
      for (int k = 0; k < g.dim(); ++k) out << xc[k] << ',';
      out << j << ',' << format_number(z.real()) << ',' << format_number(z.imag())
          << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

Field read_field_csv(const std::filesystem::path& file, const GridSpec& grid,
                     int fiber_dim) {
  std::ifstream in = open_in(file);
  std::size_t lineno = 1;
  const std::string header = read_line_checked(in, file, lineno, "header");
  if (header != coord_header(grid) + ",component,re,im")
    fail(file, lineno, "unexpected header '" + header + "'");

  Field f(grid, fiber_dim);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cols = split_row(line);
    if (cols.size() != static_cast<std::size_t>(grid.dim()) + 3)
      fail(file, lineno, "wrong column count");
    const std::size_t cell = parse_cell(cols, grid, file, lineno);
    const long long j = parse_int(cols[grid.dim()], file, lineno);
    if (j < 0 || j >= fiber_dim) fail(file, lineno, "component out of range");
    const double re = parse_double(cols[grid.dim() + 1], file, lineno);
    const double im = parse_double(cols[grid.dim() + 2], file, lineno);
    f.fiber(cell)[static_cast<std::size_t>(j)] = cplx(re, im);
  }
  return f;
}

void write_projection_field_csv(const std::filesystem::path& file,
                                const ProjectionField& p) {
  std::ofstream out = open_out(file);
  const GridSpec& g = p.grid();
  const int d = p.fiber_dim();
  out << coord_header(g) << ",row,col,re,im\n";
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const std::vector<int> xc = g.coords(c);
    const std::span<const cplx> block = p.block(c);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const cplx z = block[static_cast<std::size_t>(i) * d + j];
        for (int k = 0; k < g.dim(); ++k) out << xc[k] << ',';
        out << i << ',' << j << ',' << format_number(z.real()) << ','
            << format_number(z.imag()) << '\n';
      }
  }
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

ProjectionField read_projection_field_csv(const std::filesystem::path& file,
                                          const GridSpec& grid, int fiber_dim,
                                          const Tolerances& tol) {
  std::ifstream in = open_in(file);
  std::size_t lineno = 1;
  const std::string header = read_line_checked(in, file, lineno, "header");
  if (header != coord_header(grid) + ",row,col,re,im")
    fail(file, lineno, "unexpected header '" + header + "'");

  const int d = fiber_dim;
  std::vector<FiberOperator> blocks(grid.cells(), FiberOperator(d));
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cols = split_row(line);
    if (cols.size() != static_cast<std::size_t>(grid.dim()) + 4)
      fail(file, lineno, "wrong column count");
    const std::size_t cell = parse_cell(cols, grid, file, lineno);
    const long long i = parse_int(cols[grid.dim()], file, lineno);
    const long long j = parse_int(cols[grid.dim() + 1], file, lineno);
    if (i < 0 || i >= d || j < 0 || j >= d) fail(file, lineno, "matrix index out of range");
    const double re = parse_double(cols[grid.dim() + 2], file, lineno);
    const double im = parse_double(cols[grid.dim() + 3], file, lineno);
    blocks[cell](static_cast<int>(i), static_cast<int>(j)) = cplx(re, im);
  }
  return ProjectionField::generate(
      grid, d, [&](std::size_t cell) { return blocks[cell]; }, tol);
}

void write_global_operator_csv(const std::filesystem::path& file,
                               const GlobalOperator& g) {
  std::ofstream out = open_out(file);
  out << "row,col,re,im\n";
  const std::size_t n = g.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const cplx z = g.at(r, c);
      if (z == cplx(0.0, 0.0)) continue;
      out << r << ',' << c << ',' << format_number(z.real()) << ','
          << format_number(z.imag()) << '\n';
    }
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

GlobalOperator read_global_operator_csv(const std::filesystem::path& file,
                                        const GridSpec& grid, int fiber_dim) {
  std::ifstream in = open_in(file);
  std::size_t lineno = 1;
  const std::string header = read_line_checked(in, file, lineno, "header");
  if (header != "row,col,re,im") fail(file, lineno, "unexpected header '" + header + "'");

  GlobalOperator g(grid, fiber_dim);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cols = split_row(line);
    if (cols.size() != 4) fail(file, lineno, "wrong column count");
    const long long r = parse_int(cols[0], file, lineno);
    const long long c = parse_int(cols[1], file, lineno);
    if (r < 0 || c < 0 || r >= static_cast<long long>(g.dim()) ||
        c >= static_cast<long long>(g.dim()))
      fail(file, lineno, "matrix index out of range");
    const double re = parse_double(cols[2], file, lineno);
    const double im = parse_double(cols[3], file, lineno);
    g.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = cplx(re, im);
  }
  return g;
}

void write_trajectory_csv(const std::filesystem::path& file, const Trajectory& traj) {
  if (traj.states.empty()) throw std::invalid_argument("trajectory: empty");
  std::ofstream out = open_out(file);
  const GridSpec& g = traj.states.front().grid();
  out << "t," << coord_header(g) << ",component,re,im\n";
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const std::string t = format_number(traj.times[s]);
    const Field& f = traj.states[s];
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const std::vector<int> xc = g.coords(c);
      for (int j = 0; j < f.fiber_dim(); ++j) {
        const cplx z = f.fiber(c)[j];
        out << t << ',';
        for (int k = 0; k < g.dim(); ++k) out << xc[k] << ',';
        out << j << ',' << format_number(z.real()) << ',' << format_number(z.imag())
            << '\n';
      }
    }
  }
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace gflab::io
