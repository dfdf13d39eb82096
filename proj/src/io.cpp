#include "tatrev/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tatrev {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_number(std::string_view token, double& out) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && !token.empty();
}

template <typename Int>
bool parse_integer(std::string_view token, Int& out) {
  token = trim(token);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && !token.empty();
}

std::ifstream open_for_read(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_for_write(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::vector<double> parse_row(std::string_view line, std::size_t line_no, const fs::path& path) {
  std::vector<double> row;
  for (auto token : split(line, ',')) {
    double v = 0;
    if (!parse_number(token, v) || !std::isfinite(v)) {
      throw ParseError(path.string() + ": bad number '" + std::string(token) + "'", line_no);
    }
    row.push_back(v);
  }
  return row;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------

void write_field_csv(const fs::path& path, const ScalarField& f) {
  auto out = open_for_write(path);
  out << "# tatrev-field v1 n=" << f.n() << '\n';
  for (int k = 0; k < f.n(); ++k) {
    for (int l = 0; l < f.n(); ++l) {
      if (l) out << ',';
      out << format_double(f(k, l));
    }
    out << '\n';
  }
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

ScalarField read_field_csv(const fs::path& path) {
  auto in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    rows.push_back(parse_row(t, line_no, path));
    if (rows.back().size() != rows.front().size()) {
      throw ParseError(path.string() + ": row has " + std::to_string(rows.back().size()) +
                           " values, expected " + std::to_string(rows.front().size()),
                       line_no);
    }
  }
  const auto n = rows.size();
  if (n < 3) throw ParseError(path.string() + ": field needs at least 3 rows", line_no);
  if (rows.front().size() != n) {
    throw ParseError(path.string() + ": field is not square (" + std::to_string(n) + " rows of " +
                         std::to_string(rows.front().size()) + ")",
                     line_no);
  }
  const Grid2D grid = Grid2D::make(static_cast<int>(n));
  FieldArray<double> values(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) values(k, l) = rows[k][l];
  return ScalarField(grid, std::move(values));
}

ScalarField read_field_csv(const fs::path& path, const Grid2D& grid) {
  ScalarField f = read_field_csv(path);
  if (f.n() != grid.n) {
    throw DimensionError(path.string() + ": field has n=" + std::to_string(f.n()) + ", expected " +
                         std::to_string(grid.n));
  }
  return ScalarField(grid, f.values());
}

void write_field_pgm(const fs::path& path, const ScalarField& f) {
  const int n = f.n();
  const double lo = f.values().minCoeff();
  const double hi = f.values().maxCoeff();
  const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;

  auto out = open_for_write(path, std::ios::binary);
  out << "P5\n# tatrev-field v1\n# range " << format_double(lo) << ' ' << format_double(hi) << '\n'
      << n << ' ' << n << "\n65535\n";
  std::vector<unsigned char> bytes;
  bytes.reserve(2 * std::size_t(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const double v = f(k, n - 1 - r);
      const auto px = static_cast<std::uint16_t>(std::clamp(std::lround((v - lo) * scale), 0L, 65535L));
      bytes.push_back(static_cast<unsigned char>(px >> 8));
      bytes.push_back(static_cast<unsigned char>(px & 0xff));
    }
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

ScalarField read_field_pgm(const fs::path& path) {
  auto in = open_for_read(path, std::ios::binary);
  std::string magic;
  std::getline(in, magic);
  if (trim(magic) != "P5") throw ParseError(path.string() + ": not a binary graymap", 1);

  double lo = 0, hi = 0;
  std::vector<long> header;
  std::size_t line_no = 1;
  std::string line;
  while (header.size() < 3 && std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      std::istringstream comment{std::string(t.substr(1))};
      std::string word;
      comment >> word;
      if (word == "range" && !(comment >> lo >> hi)) {
        throw ParseError(path.string() + ": malformed range comment", line_no);
      }
      continue;
    }
    std::istringstream fields{std::string(t)};
    long v = 0;
    while (fields >> v) header.push_back(v);
  }
  if (header.size() != 3 || header[0] != header[1] || header[0] < 3 || header[2] != 65535) {
    throw ParseError(path.string() + ": unsupported graymap header", line_no);
  }
  const int n = static_cast<int>(header[0]);
  std::vector<unsigned char> bytes(2 * std::size_t(n) * n);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw ParseError(path.string() + ": truncated pixel data", line_no + 1);
  }
  FieldArray<double> values(n, n);
  const double step = (hi - lo) / 65535.0;
  std::size_t i = 0;
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k, i += 2) {
      const int px = (bytes[i] << 8) | bytes[i + 1];
      values(k, n - 1 - r) = lo + px * step;
    }
  }
  return ScalarField(Grid2D::make(n), std::move(values));
}

void write_field(const fs::path& path, const ScalarField& f) {
  const auto ext = path.extension();
  if (ext == ".csv") return write_field_csv(path, f);
  if (ext == ".pgm") return write_field_pgm(path, f);
  throw Error("unknown field format '" + ext.string() + "' (use .csv or .pgm)");
}

ScalarField read_field(const fs::path& path) {
  const auto ext = path.extension();
  if (ext == ".csv") return read_field_csv(path);
  if (ext == ".pgm") return read_field_pgm(path);
  throw Error("unknown field format '" + ext.string() + "' (use .csv or .pgm)");
}

// ---------------------------------------------------------------------------

void write_trace_csv(const fs::path& path, const BoundaryTrace& g) {
  auto out = open_for_write(path);
  const int count = g.grid().boundary_count();
  out << "# tatrev-trace v1 n=" << g.grid().n << " dt=" << format_double(g.grid().dt) << '\n';
  out << 't';
  for (int b = 0; b < count; ++b) out << ",node_" << b;
  out << '\n';
  for (int j = 0; j < g.time_samples(); ++j) {
    out << format_double(g.time(j));
    for (int b = 0; b < count; ++b) out << ',' << format_double(g(j, b));
    out << '\n';
  }
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

BoundaryTrace read_trace_csv(const fs::path& path, const BoundarySpec& bspec) {
  auto in = open_for_read(path);
  const int count = bspec.grid().boundary_count();
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!have_header) {
      const auto names = split(t, ',');
      if (names.empty() || names.front() != "t") {
        throw ParseError(path.string() + ": expected header row starting with 't'", line_no);
      }
      if (static_cast<int>(names.size()) - 1 != count) {
        throw DimensionError(path.string() + ": trace has " + std::to_string(names.size() - 1) +
                             " node columns, grid n=" + std::to_string(bspec.grid().n) + " needs " +
                             std::to_string(count));
      }
      for (int b = 0; b < count; ++b) {
        if (names[b + 1] != "node_" + std::to_string(b)) {
          throw ParseError(path.string() + ": column " + std::to_string(b + 1) + " should be node_" +
                               std::to_string(b),
                           line_no);
        }
      }
      have_header = true;
      continue;
    }
    auto row = parse_row(t, line_no, path);
    if (static_cast<int>(row.size()) != count + 1) {
      throw ParseError(path.string() + ": row has " + std::to_string(row.size()) + " values, expected " +
                           std::to_string(count + 1),
                       line_no);
    }
    times.push_back(row.front());
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(path.string() + ": missing header row", line_no);

  Grid2D grid = bspec.grid();
  if (times.size() >= 2) grid = grid.with_time_step(times[1] - times[0]);
  TraceArray samples(static_cast<Eigen::Index>(rows.size()), count);
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (int b = 0; b < count; ++b) samples(static_cast<Eigen::Index>(j), b) = rows[j][b + 1];
  return BoundaryTrace(grid, bspec.gamma(), std::move(samples));
}

// ---------------------------------------------------------------------------

Grid2D RunConfig::grid() const {
  const Grid2D g = Grid2D::make(n, dt_factor);
  return dt_snap ? g.snapped_to(T) : g;
}

BoundarySpec RunConfig::boundary(const Grid2D& g) const {
  if (gamma == "full") return BoundarySpec::from_mask(g, BoolArray::Constant(g.boundary_count(), true), lambda, lambda_taper);
  if (gamma == "left_bottom") return BoundarySpec::left_bottom(g, lambda, lambda_taper);

  std::vector<int> nodes;
  for (auto item : split(gamma, ',')) {
    const auto dash = item.find('-');
    int first = 0, last = 0;
    const bool ok = dash == std::string_view::npos
                        ? parse_integer(item, first) && (last = first, true)
                        : parse_integer(item.substr(0, dash), first) && parse_integer(item.substr(dash + 1), last);
    if (!ok || last < first) throw ConfigError("key 'gamma': bad node list entry '" + std::string(item) + "'");
    for (int b = first; b <= last; ++b) nodes.push_back(b);
  }
  try {
    return BoundarySpec::from_nodes(g, nodes, lambda, lambda_taper);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("key 'gamma': ") + e.what());
  }
}

std::vector<BumpSpec> RunConfig::phantom_bumps() const {
  if (phantom == "paper-six") return six_inclusion_phantom();
  return bumps;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value(trim(raw));
  auto fail = [&](const std::string& why) -> void {
    throw ConfigError("key '" + key + "': " + why + " (got '" + value + "')");
  };
  auto number = [&] {
    double v = 0;
    if (!parse_number(value, v) || !std::isfinite(v)) fail("expected a number");
    return v;
  };
  auto integer = [&] {
    long v = 0;
    if (!parse_integer(value, v)) fail("expected an integer");
    return v;
  };
  auto boolean = [&] {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    fail("expected true or false");
    return false;
  };

  if (key == "n") {
    const long v = integer();
    if (v < 3 || v > 8193) fail("must be between 3 and 8193");
    cfg.n = static_cast<int>(v);
  } else if (key == "dt_factor") {
    const double v = number();
    if (!(v > 0) || v > 1.0 / std::sqrt(2.0)) fail("must lie in (0, 1/sqrt(2)]");
    cfg.dt_factor = v;
  } else if (key == "dt_snap") {
    cfg.dt_snap = boolean();
  } else if (key == "T") {
    const double v = number();
    if (!(v > 0)) fail("must be positive");
    cfg.T = v;
  } else if (key == "gamma") {
    if (value.empty()) fail("expected full, left_bottom or a node list");
    cfg.gamma = value;
  } else if (key == "lambda") {
    const double v = number();
    if (!(v > 0)) fail("must be positive");
    cfg.lambda = v;
  } else if (key == "lambda_taper") {
    const double v = number();
    if (v < 0) fail("must be non-negative");
    cfg.lambda_taper = v;
  } else if (key == "phantom") {
    if (value != "paper-six" && value != "custom") fail("expected paper-six or custom");
    cfg.phantom = value;
  } else if (key == "bump") {
    const auto parts = split(value, ',');
    BumpSpec b;
    if (parts.size() != 4 || !parse_number(parts[0], b.cx) || !parse_number(parts[1], b.cy) ||
        !parse_number(parts[2], b.radius) || !parse_number(parts[3], b.amplitude)) {
      fail("expected x, y, radius, amplitude");
    }
    cfg.bumps.push_back(b);
    cfg.phantom = "custom";
  } else if (key == "noise") {
    const double v = number();
    if (v < 0) fail("must be non-negative");
    cfg.noise = v;
  } else if (key == "seed") {
    std::uint64_t v = 0;
    if (!parse_integer(value, v)) fail("expected a non-negative integer");
    cfg.seed = v;
  } else if (key == "iterations") {
    const long v = integer();
    if (v < 0 || v > 1000) fail("must be between 0 and 1000");
    cfg.iterations = static_cast<int>(v);
  } else if (key == "subspace") {
    if (value == "H0") cfg.subspace = Subspace::H0;
    else if (value == "H1") cfg.subspace = Subspace::H1;
    else fail("expected H0 or H1");
  } else if (key == "reference") {
    if (value == "phantom") cfg.reference = true;
    else if (value == "none") cfg.reference = false;
    else fail("expected phantom or none");
  } else if (key == "out") {
    if (value.empty()) fail("must not be empty");
    cfg.out = value;
  } else if (key == "trace") {
    cfg.trace = value;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key(trim(body.substr(0, eq)));
    try {
      apply_setting(cfg, key, std::string(body.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig parse_config(const fs::path& path) {
  auto in = open_for_read(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace tatrev
