#pragma once

#include "epg/dataset.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace epg {

struct CsvOptions
{
	char delimiter = ',';
	bool has_header = true;
	/// Column holding point weights, by header name or 0-based index.
	std::optional<std::string> weight_column;
	/// Column holding categorical labels, by header name or 0-based index.
	std::optional<std::string> label_column;
};

/// Parse numeric CSV text. Every cell outside the label column must be a
/// finite number. Errors cite the 1-based line and column.
Dataset parse_csv(std::string_view text, const CsvOptions& options = {}, const std::string& source = "<input>");

Dataset load_csv(const std::string& path, const CsvOptions& options = {});

/// Header x1..xm, then `weight` when any weight differs from 1, then
/// `label` when the dataset is labeled. Numbers use 17 significant digits.
void write_csv(std::ostream& out, const Dataset& dataset, char delimiter = ',');
void save_csv(const std::string& path, const Dataset& dataset, char delimiter = ',');

/// 17-significant-digit formatting shared by every text writer.
std::string format_number(double value);

/// Whole file as a string; throws DataError when unreadable.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

} // namespace epg
