#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "glogit/diagnostics.hpp"
#include "glogit/model.hpp"
#include "glogit/sampler.hpp"

namespace glogit {

/// %.17g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double value);

/// Reads a headered CSV into a Dataset. Columns other than `response` become
/// covariates in header order.
///
/// Throws IoError when the file cannot be opened, ParseError (1-based line and
/// column) for malformed rows or non-numeric cells, and DataError for a
/// missing or non-binary response column or a header-only file.
Dataset read_csv(const std::filesystem::path& path,
                 const std::string& response = "y");

/// Header `y,<names>`; one row per observation.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

/// Header `iter,beta_0,...,beta_{k-1},p`.
void write_chain_csv(const std::filesystem::path& path, const Chain& chain);

/// Inverse of write_chain_csv. Requires a leading `iter` column, a trailing
/// `p` column and strictly increasing iterations. Only draws, iters and
/// param_names are filled in.
Chain read_chain_csv(const std::filesystem::path& path);

void write_summary_csv(const std::filesystem::path& path,
                       const PosteriorSummary& summary);
/// Aligned plain-text table, one row per parameter.
void write_summary_txt(const std::filesystem::path& path,
                       const PosteriorSummary& summary);
std::string format_summary_table(const PosteriorSummary& summary);

/// geweke.csv, acf.csv and pacf.csv in `dir`.
void write_diagnostics(const Chain& chain, long max_lag,
                       const std::filesystem::path& dir);

/// Writes `contents` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

/// FNV-1a 64 of the file bytes.
std::uint64_t file_digest(const std::filesystem::path& path);

}  // namespace glogit
