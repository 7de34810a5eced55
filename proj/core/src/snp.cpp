#include "epg/snp.hpp"

#include "epg/csv.hpp"
#include "epg/error.hpp"

#include <algorithm>
#include <set>

namespace epg {

namespace {

std::string_view trim(std::string_view s)
{
	while (!s.empty() && (s.front() == ' ' || s.front() == '\r'))
		s.remove_prefix(1);
	while (!s.empty() && (s.back() == ' ' || s.back() == '\r'))
		s.remove_suffix(1);
	return s;
}

std::vector<std::string> split(std::string_view line, char delimiter)
{
	std::vector<std::string> cells;
	std::size_t start = 0;
	while (true) {
		const auto pos = line.find(delimiter, start);
		cells.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
		if (pos == std::string_view::npos)
			return cells;
		start = pos + 1;
	}
}

} // namespace

SnpTable parse_snp_table(std::string_view text, const SnpOptions& options, const std::string& source)
{
	SnpTable table;
	std::vector<std::string> header;
	std::ptrdiff_t label_index = -1;
	std::size_t line_no = 0;
	std::size_t start = 0;
	while (start <= text.size()) {
		auto end = text.find('\n', start);
		if (end == std::string_view::npos)
			end = text.size();
		const auto line = text.substr(start, end - start);
		start = end + 1;
		++line_no;
		if (trim(line).empty())
			continue;
		auto cells = split(line, options.delimiter);
		if (header.empty()) {
			header = std::move(cells);
			for (std::size_t i = 0; i < header.size(); ++i) {
				if (!options.label_column.empty() && header[i] == options.label_column)
					label_index = static_cast<std::ptrdiff_t>(i);
				else
					table.snp_names.push_back(header[i]);
			}
			if (!options.label_column.empty() && label_index < 0)
				throw DataError(source + ": label column '" + options.label_column + "' not found");
			continue;
		}
		if (cells.size() != header.size())
			throw DataError(source + ": line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
			                " fields, expected " + std::to_string(header.size()));
		std::vector<std::string> row;
		row.reserve(table.snp_names.size());
		for (std::size_t i = 0; i < cells.size(); ++i) {
			if (static_cast<std::ptrdiff_t>(i) == label_index)
				table.labels.push_back(cells[i]);
			else
				row.push_back(std::move(cells[i]));
		}
		table.codes.push_back(std::move(row));
	}
	if (table.codes.empty())
		throw DataError(source + ": no genotype rows");
	return table;
}

SnpTable load_snp_table(const std::string& path, const SnpOptions& options)
{
	return parse_snp_table(read_text_file(path), options, path);
}

bool is_homozygous(std::string_view code)
{
	char first = 0;
	for (char c : code) {
		if (c == '/' || c == '|')
			continue;
		if (first == 0)
			first = c;
		else if (c != first)
			return false;
	}
	return first != 0;
}

SnpEncoding snp_encode(const SnpTable& table, const std::vector<std::string>& missing_codes)
{
	const std::size_t n = table.codes.size();
	if (n == 0)
		throw DataError("SNP table has no individuals");
	const std::size_t columns = table.snp_names.size();
	for (std::size_t r = 0; r < n; ++r)
		if (table.codes[r].size() != columns)
			throw DataError("SNP table row " + std::to_string(r + 1) + " has the wrong number of codes");

	const std::set<std::string> missing(missing_codes.begin(), missing_codes.end());
	std::vector<std::string> kept;
	std::vector<std::string> dropped;
	std::vector<std::vector<double>> values;

	for (std::size_t c = 0; c < columns; ++c) {
		std::set<std::string> statuses;
		bool unreliable = false;
		for (std::size_t r = 0; r < n; ++r) {
			const std::string& code = table.codes[r][c];
			if (code.empty() || missing.count(code)) {
				unreliable = true;
				continue;
			}
			statuses.insert(code);
		}
		if (statuses.size() > 3)
			throw DataError("SNP '" + table.snp_names[c] + "' has " + std::to_string(statuses.size()) +
			                " distinct statuses (at most 3 allowed)");
		if (unreliable) {
			dropped.push_back(table.snp_names[c]);
			continue;
		}
		std::vector<std::string> heterozygous;
		for (const auto& s : statuses)
			if (!is_homozygous(s))
				heterozygous.push_back(s); // std::set iteration is lexicographic
		if (heterozygous.size() > 2)
			throw DataError("SNP '" + table.snp_names[c] + "' has more than two heterozygous statuses");

		std::vector<double> column(n);
		for (std::size_t r = 0; r < n; ++r) {
			const std::string& code = table.codes[r][c];
			if (is_homozygous(code))
				column[r] = 0.0;
			else
				column[r] = code == heterozygous.front() ? -1.0 : 1.0;
		}
		kept.push_back(table.snp_names[c]);
		values.push_back(std::move(column));
	}
	if (kept.empty())
		throw DataError("no SNP survives filtering of unreliable statuses");

	Eigen::MatrixXd points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kept.size()));
	for (std::size_t c = 0; c < kept.size(); ++c)
		for (std::size_t r = 0; r < n; ++r)
			points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[c][r];
	return SnpEncoding{Dataset(std::move(points), {}, table.labels), std::move(kept), std::move(dropped)};
}

} // namespace epg
