// Experiment configuration, dense-matrix file format, run manifest with
// checksums, and a minimal SVG line-chart writer.
#pragma once

#include "wallkit/core.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace wallkit {

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct ExperimentConfig {
  std::string model;             // model id, or empty when a file is given
  std::string hamiltonian_file;  // dense-matrix file (see read_matrix)
  int nl = 0, nw = 0, ne = 0;    // required with hamiltonian_file
  double eta_reg = 0.01;
  double beta = 0.01;
  std::string objective = "variance";  // "variance" | "purity-avg"
  std::string frame = "identity";      // "identity" | "optimized"
  int restarts = 8;

  std::vector<std::string> schemes;  // subset of measurement/dissipation/driving
  std::vector<double> meas_freqs;
  std::vector<double> diss_rates;
  std::vector<double> drive_kappas;

  std::string dd_sequence = "both";  // "universal" | "selective" | "both"
  bool dd_ideal = true;
  double dd_frequency = 10.0;  // cycles per unit time (T = 1/f)
  double dd_duty = 0.2;        // total pulse fraction of the period
  double dd_drive_kappa = 0.0; // wall drive active during the sequence

  double t_final = 30.0;
  int n_points = 600;
  double threshold = 0.97;
  std::vector<double> kappa_sweep;

  std::uint64_t seed = 0;
  std::string out_dir = ".";

  bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {
inline std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}
inline std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}
inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}
inline std::vector<double> split_doubles(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const std::string& tok : split_list(s)) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + tok + "' in " + key);
    }
  }
  return out;
}
inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace detail

inline std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "model = " << c.model << "\n";
  os << "hamiltonian_file = " << c.hamiltonian_file << "\n";
  os << "dims.nl = " << c.nl << "\n";
  os << "dims.nw = " << c.nw << "\n";
  os << "dims.ne = " << c.ne << "\n";
  os << "eta_reg = " << c.eta_reg << "\n";
  os << "beta = " << c.beta << "\n";
  os << "objective = " << c.objective << "\n";
  os << "frame = " << c.frame << "\n";
  os << "restarts = " << c.restarts << "\n";
  os << "control.schemes = " << detail::join(c.schemes) << "\n";
  os << "control.measurement_freqs = " << detail::join(c.meas_freqs) << "\n";
  os << "control.dissipation_rates = " << detail::join(c.diss_rates) << "\n";
  os << "control.driving_kappas = " << detail::join(c.drive_kappas) << "\n";
  os << "dd.sequence = " << c.dd_sequence << "\n";
  os << "dd.ideal = " << (c.dd_ideal ? "true" : "false") << "\n";
  os << "dd.frequency = " << c.dd_frequency << "\n";
  os << "dd.duty = " << c.dd_duty << "\n";
  os << "dd.drive_kappa = " << c.dd_drive_kappa << "\n";
  os << "time.final = " << c.t_final << "\n";
  os << "time.points = " << c.n_points << "\n";
  os << "time.threshold = " << c.threshold << "\n";
  os << "eternal.kappa_sweep = " << detail::join(c.kappa_sweep) << "\n";
  os << "seed = " << c.seed << "\n";
  os << "out_dir = " << c.out_dir << "\n";
  return os.str();
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(t.substr(0, eq));
    std::string val = detail::trim(t.substr(eq + 1));
    auto num = [&](double lo, double hi) {
      auto v = detail::split_doubles(val, key);
      if (v.size() != 1 || v[0] < lo || v[0] > hi)
        throw ConfigError("bad value for " + key + ": " + val);
      return v[0];
    };
    if (key == "model") c.model = val;
    else if (key == "hamiltonian_file") c.hamiltonian_file = val;
    else if (key == "dims.nl") c.nl = int(num(0, 64));
    else if (key == "dims.nw") c.nw = int(num(0, 64));
    else if (key == "dims.ne") c.ne = int(num(0, 64));
    else if (key == "eta_reg") c.eta_reg = num(0, 1e6);
    else if (key == "beta") c.beta = num(0, 1e6);
    else if (key == "objective") c.objective = val;
    else if (key == "frame") c.frame = val;
    else if (key == "restarts") c.restarts = int(num(1, 1000));
    else if (key == "control.schemes") c.schemes = detail::split_list(val);
    else if (key == "control.measurement_freqs") c.meas_freqs = detail::split_doubles(val, key);
    else if (key == "control.dissipation_rates") c.diss_rates = detail::split_doubles(val, key);
    else if (key == "control.driving_kappas") c.drive_kappas = detail::split_doubles(val, key);
    else if (key == "dd.sequence") c.dd_sequence = val;
    else if (key == "dd.ideal") {
      if (val != "true" && val != "false") throw ConfigError("dd.ideal must be true/false");
      c.dd_ideal = (val == "true");
    }
    else if (key == "dd.frequency") c.dd_frequency = num(1e-9, 1e9);
    else if (key == "dd.duty") c.dd_duty = num(0, 0.999);
    else if (key == "dd.drive_kappa") c.dd_drive_kappa = num(-1e9, 1e9);
    else if (key == "time.final") c.t_final = num(0, 1e9);
    else if (key == "time.points") c.n_points = int(num(2, 1e7));
    else if (key == "time.threshold") c.threshold = num(0, 1);
    else if (key == "eternal.kappa_sweep") c.kappa_sweep = detail::split_doubles(val, key);
    else if (key == "seed") {
      try {
        c.seed = std::stoull(val);
      } catch (const std::exception&) {
        throw ConfigError("bad seed: " + val);
      }
    }
    else if (key == "out_dir") c.out_dir = val;
    else throw ConfigError("unknown key: " + key);
  }
  if (c.objective != "variance" && c.objective != "purity-avg")
    throw ConfigError("objective must be 'variance' or 'purity-avg'");
  if (c.frame != "identity" && c.frame != "optimized")
    throw ConfigError("frame must be 'identity' or 'optimized'");
  if (c.dd_sequence != "universal" && c.dd_sequence != "selective" &&
      c.dd_sequence != "both")
    throw ConfigError("dd.sequence must be universal, selective or both");
  for (const std::string& s : c.schemes)
    if (s != "measurement" && s != "dissipation" && s != "driving")
      throw ConfigError("unknown control scheme: " + s);
  if (c.model.empty() == c.hamiltonian_file.empty())
    throw ConfigError("exactly one of model / hamiltonian_file must be set");
  if (!c.hamiltonian_file.empty() && (c.nl < 2 || c.nw < 2 || c.ne < 2))
    throw ConfigError("dims required (>= 2 each) with hamiltonian_file");
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// ---------------------------------------------------------------------------
// Dense matrix file: first line n, then n^2 lines "row col re im".
inline void write_matrix(const std::string& path, const Mat& M) {
  if (M.rows() != M.cols()) throw DimensionError("write_matrix: square only");
  std::ofstream out(path);
  if (!out) throw Error("write_matrix: cannot open " + path);
  out << M.rows() << "\n" << std::setprecision(17);
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      out << r << " " << c << " " << M(r, c).real() << " " << M(r, c).imag() << "\n";
}

inline Mat read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_matrix: cannot open " + path);
  long n = 0;
  if (!(in >> n) || n <= 0 || n > 4096) throw Error("read_matrix: bad dimension line");
  Mat M = Mat::Zero(n, n);
  for (long k = 0; k < n * n; ++k) {
    long r, c;
    double re, im;
    if (!(in >> r >> c >> re >> im)) throw Error("read_matrix: truncated file");
    if (r < 0 || r >= n || c < 0 || c >= n) throw Error("read_matrix: index out of range");
    M(r, c) = cplx(re, im);
  }
  return M;
}

// ---------------------------------------------------------------------------
// FNV-1a 64-bit checksum of a file's bytes.
inline std::uint64_t file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("file_checksum: cannot open " + path);
  std::uint64_t h = 14695981039346656037ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

inline constexpr const char* kLibraryVersion = "0.1.0";

// Writes manifest.txt: config echo, version, and a checksum line for every
// produced file.
inline void write_manifest(const std::string& out_dir, const ExperimentConfig& cfg,
                           const std::vector<std::pair<std::string, double>>& timings) {
  namespace fs = std::filesystem;
  std::string path = (fs::path(out_dir) / "manifest.txt").string();
  std::ostringstream body;
  body << "# run manifest\nversion = " << kLibraryVersion << "\n\n[config]\n"
       << serialize_config(cfg) << "\n[timings]\n";
  body << std::setprecision(6);
  for (const auto& [name, sec] : timings) body << name << " = " << sec << " s\n";
  body << "\n[artifacts]\n";
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(out_dir))
    if (e.is_regular_file() && e.path().filename() != "manifest.txt")
      files.push_back(e.path().filename().string());
  std::sort(files.begin(), files.end());
  for (const std::string& f : files) {
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0')
        << file_checksum((fs::path(out_dir) / f).string());
    body << f << " = fnv1a64:" << hex.str() << "\n";
  }
  std::ofstream out(path);
  if (!out) throw Error("write_manifest: cannot open " + path);
  out << body.str();
}

// ---------------------------------------------------------------------------
// Minimal SVG line chart: one polyline per series over a shared x axis.
struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::vector<PlotSeries>& series) {
  const int W = 720, H = 480, ml = 60, mr = 20, mt = 40, mb = 40;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::ofstream out(path);
  if (!out) throw Error("write_svg_plot: cannot open " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>"
      << title << "</text>\n";
  out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='"
      << H - mb << "' stroke='black'/>\n";
  out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
      << "' stroke='black'/>\n";
  out << std::setprecision(6);
  for (size_t s = 0; s < series.size(); ++s) {
    const char* col = colors[s % 8];
    out << "<polyline fill='none' stroke='" << col << "' stroke-width='1.5' points='";
    for (size_t i = 0; i < series[s].x.size(); ++i)
      out << px(series[s].x[i]) << "," << py(series[s].y[i]) << " ";
    out << "'/>\n";
    out << "<text x='" << W - mr - 150 << "' y='" << mt + 16 * (s + 1)
        << "' font-size='12' fill='" << col << "'>" << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace wallkit
