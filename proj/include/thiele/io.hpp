#pragma once

// Sample CSV input, model JSON (schema v1) and study CSV output.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thiele/core.hpp"
#include "thiele/newman.hpp"

namespace thiele::io {

inline constexpr int kModelFormatVersion = 1;
inline constexpr std::string_view kStudyCsvHeader =
    "n,eta,order,sup_err,node_err_2norm,poles,stopped_early";

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Parses a full decimal string (surrounding whitespace allowed). Accepts
/// "inf"/"nan" spellings; the caller decides whether those are acceptable.
/// Returns false on malformed text.
bool parse_double(std::string_view text, double& out);

/// Reads "x,f" rows. An optional header line "x,f" is skipped, as are blank
/// lines and lines starting with '#'.
/// Throws ParseError, DuplicateAbscissa or NonFiniteValue.
SampleSet read_samples(std::istream& in);
SampleSet read_samples(const std::filesystem::path& path);

void write_samples(const SampleSet& data, std::ostream& out);

struct ModelMetadata {
  std::string tool_version;
  FitConfig config;
  bool stopped_early = false;
};

/// Writes the v1 model document. Numbers are stored as shortest round-trip
/// decimal strings so the read-back model is bitwise identical.
void write_model(const ThieleModel& model, const ModelMetadata& meta, std::ostream& out);
void write_model(const ThieleModel& model, const ModelMetadata& meta,
                 const std::filesystem::path& path);

struct ModelDocument {
  ThieleModel model;
  ModelMetadata metadata;
};

/// Throws VersionMismatch for a format_version other than 1, SchemaError for
/// malformed JSON, missing fields or an invalid model.
ModelDocument read_model(std::istream& in);
ModelDocument read_model(const std::filesystem::path& path);

void write_study_csv(std::span<const newman::StudyRow> rows, std::ostream& out);
/// Parses what write_study_csv produced. Throws ParseError.
std::vector<newman::StudyRow> read_study_csv(std::istream& in);

}  // namespace thiele::io
