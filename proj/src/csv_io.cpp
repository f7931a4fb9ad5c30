#include "rcis/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rcis/errors.hpp"

namespace rcis {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

void write_frf_csv(const std::string& path, const FrfData& frf) {
  std::ostringstream ss;
  ss << "omega,re,im\n";
  for (std::size_t i = 0; i < frf.size(); ++i) {
    ss << format_double(frf.omegas[i]) << ',' << format_double(frf.values[i].real()) << ','
       << format_double(frf.values[i].imag()) << '\n';
  }
  write_text_file(path, ss.str());
}

FrfData read_frf_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty FRF file: " + path);
  if (line == "omega,re,im\r") line.pop_back();
  if (line != "omega,re,im") {
    throw ConfigError("FRF file must start with header omega,re,im: " + path);
  }
  std::vector<double> omegas;
  std::vector<Complex> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double w = 0.0, re = 0.0, im = 0.0;
    char extra = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &w, &re, &im, &extra) != 3) {
      throw ConfigError("malformed FRF row at line " + std::to_string(lineno) + ": " + path);
    }
    if (!omegas.empty() && w <= omegas.back()) {
      throw ConfigError("FRF frequencies must be strictly increasing: " + path);
    }
    omegas.push_back(w);
    values.emplace_back(re, im);
  }
  try {
    return FrfData(std::move(omegas), std::move(values), FrfSource::kImported);
  } catch (const InvalidParameters& e) {
    throw ConfigError(std::string(e.what()) + ": " + path);
  }
}

void write_timestamps_csv(const std::string& path, const TimestampSet& psi) {
  std::ostringstream ss;
  ss << "k\n";
  for (std::int64_t k : psi.stamps) ss << k << '\n';
  write_text_file(path, ss.str());
}

void write_timeseries_csv(const std::string& path, const SimResult& result) {
  const std::vector<std::uint8_t> sampled = result.psi.mask();
  std::ostringstream ss;
  ss << "k,v,y,e,ebar,u,sampled\n";
  for (std::size_t k = 0; k < result.e.size(); ++k) {
    ss << k << ',' << format_double(result.v[k]) << ',' << format_double(result.y[k]) << ','
       << format_double(result.e[k]) << ',' << format_double(result.ebar[k]) << ','
       << format_double(result.u[k]) << ',' << static_cast<int>(sampled[k]) << '\n';
  }
  write_text_file(path, ss.str());
}

void write_spectrum_csv(const std::string& path, const AmplitudeSpectrum& spectrum,
                        double sample_time) {
  std::ostringstream ss;
  ss << "omega_hz,amplitude,cumulative\n";
  for (std::size_t i = 0; i < spectrum.omegas.size(); ++i) {
    const double hz = spectrum.omegas[i] / (2.0 * M_PI * sample_time);
    ss << format_double(hz) << ',' << format_double(spectrum.amplitude[i]) << ','
       << format_double(spectrum.cumulative[i]) << '\n';
  }
  write_text_file(path, ss.str());
}

void write_tr_csv(const std::string& path, const FrfData& tr_frf) {
  std::ostringstream ss;
  ss << "omega,re_TR,im_TR,abs_TR\n";
  for (std::size_t i = 0; i < tr_frf.size(); ++i) {
    ss << format_double(tr_frf.omegas[i]) << ',' << format_double(tr_frf.values[i].real())
       << ',' << format_double(tr_frf.values[i].imag()) << ','
       << format_double(std::abs(tr_frf.values[i])) << '\n';
  }
  write_text_file(path, ss.str());
}

}  // namespace rcis
