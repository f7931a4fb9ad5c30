#pragma once

#include <string>
#include <vector>

#include "rcis/sim.hpp"
#include "rcis/stability.hpp"
#include "rcis/timestamping.hpp"
#include "rcis/transfer_function.hpp"

namespace rcis {

// Shortest exact decimal representation; all CSV output goes through this so
// identical runs are byte-identical.
std::string format_double(double x);

// Header `omega,re,im`, omega in rad/sample.
void write_frf_csv(const std::string& path, const FrfData& frf);
FrfData read_frf_csv(const std::string& path);  // throws ConfigError on malformed input

// Column `k`.
void write_timestamps_csv(const std::string& path, const TimestampSet& psi);

// `k,v,y,e,ebar,u,sampled`.
void write_timeseries_csv(const std::string& path, const SimResult& result);

// `omega_hz,amplitude,cumulative`.
void write_spectrum_csv(const std::string& path, const AmplitudeSpectrum& spectrum,
                        double sample_time);

// `omega,re_TR,im_TR,abs_TR`.
void write_tr_csv(const std::string& path, const FrfData& tr_frf);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rcis
