#include "epg/csv.hpp"

#include "epg/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace epg {

namespace {

std::string_view trim(std::string_view s)
{
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
		s.remove_prefix(1);
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
		s.remove_suffix(1);
	return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter)
{
	std::vector<std::string_view> cells;
	std::size_t start = 0;
	while (true) {
		const auto pos = line.find(delimiter, start);
		if (pos == std::string_view::npos) {
			cells.push_back(trim(line.substr(start)));
			return cells;
		}
		cells.push_back(trim(line.substr(start, pos - start)));
		start = pos + 1;
	}
}

std::optional<double> parse_double(std::string_view cell)
{
	if (cell.empty())
		return std::nullopt;
	if (cell.front() == '+')
		cell.remove_prefix(1);
	double value = 0.0;
	const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
	if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value))
		return std::nullopt;
	return value;
}

std::optional<std::size_t> resolve_column(const std::optional<std::string>& spec,
                                          const std::vector<std::string>& header, std::size_t columns,
                                          const char* what)
{
	if (!spec)
		return std::nullopt;
	for (std::size_t i = 0; i < header.size(); ++i)
		if (header[i] == *spec)
			return i;
	std::size_t index = 0;
	const auto [ptr, ec] = std::from_chars(spec->data(), spec->data() + spec->size(), index);
	if (ec == std::errc() && ptr == spec->data() + spec->size() && index < columns)
		return index;
	throw DataError(std::string(what) + " column '" + *spec + "' not found");
}

} // namespace

Dataset parse_csv(std::string_view text, const CsvOptions& options, const std::string& source)
{
	std::vector<std::vector<std::string_view>> rows;
	std::vector<std::size_t> line_numbers;
	std::vector<std::string> header;
	std::size_t line_no = 0;
	std::size_t start = 0;
	bool header_pending = options.has_header;
	while (start <= text.size()) {
		auto end = text.find('\n', start);
		if (end == std::string_view::npos)
			end = text.size();
		const std::string_view line = text.substr(start, end - start);
		++line_no;
		start = end + 1;
		if (trim(line).empty())
			continue;
		auto cells = split(line, options.delimiter);
		if (header_pending) {
			for (auto c : cells)
				header.emplace_back(c);
			header_pending = false;
			continue;
		}
		rows.push_back(std::move(cells));
		line_numbers.push_back(line_no);
	}
	if (rows.empty())
		throw DataError(source + ": no data rows");

	const std::size_t columns = header.empty() ? rows.front().size() : header.size();
	for (std::size_t r = 0; r < rows.size(); ++r)
		if (rows[r].size() != columns)
			throw DataError(source + ": line " + std::to_string(line_numbers[r]) + " has " +
			                std::to_string(rows[r].size()) + " fields, expected " + std::to_string(columns));

	const auto weight_col = resolve_column(options.weight_column, header, columns, "weight");
	const auto label_col = resolve_column(options.label_column, header, columns, "label");
	if (weight_col && label_col && *weight_col == *label_col)
		throw DataError(source + ": weight and label columns coincide");

	std::vector<std::size_t> coord_cols;
	for (std::size_t c = 0; c < columns; ++c)
		if (c != weight_col && c != label_col)
			coord_cols.push_back(c);
	if (coord_cols.empty())
		throw DataError(source + ": no coordinate columns");

	const auto n = static_cast<Eigen::Index>(rows.size());
	Eigen::MatrixXd points(n, static_cast<Eigen::Index>(coord_cols.size()));
	Eigen::VectorXd weights = Eigen::VectorXd::Ones(n);
	std::vector<std::string> labels;
	if (label_col)
		labels.reserve(rows.size());

	auto numeric = [&](std::size_t r, std::size_t c) {
		const auto v = parse_double(rows[r][c]);
		if (!v)
			throw DataError(source + ": line " + std::to_string(line_numbers[r]) + ", column " +
			                std::to_string(c + 1) + ": '" + std::string(rows[r][c]) + "' is not a finite number");
		return *v;
	};
	for (std::size_t r = 0; r < rows.size(); ++r) {
		const auto ri = static_cast<Eigen::Index>(r);
		for (std::size_t k = 0; k < coord_cols.size(); ++k)
			points(ri, static_cast<Eigen::Index>(k)) = numeric(r, coord_cols[k]);
		if (weight_col)
			weights[ri] = numeric(r, *weight_col);
		if (label_col)
			labels.emplace_back(rows[r][*label_col]);
	}
	try {
		return Dataset(std::move(points), std::move(weights), std::move(labels));
	} catch (const DataError& e) {
		throw DataError(source + ": " + e.what());
	}
}

Dataset load_csv(const std::string& path, const CsvOptions& options)
{
	return parse_csv(read_text_file(path), options, path);
}

std::string format_number(double value)
{
	char buf[64];
	const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
	if (ec != std::errc())
		throw Error("number formatting failed");
	return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const Dataset& dataset, char delimiter)
{
	const bool weights = !dataset.unit_weights();
	const auto m = static_cast<Eigen::Index>(dataset.dimension());
	for (Eigen::Index j = 0; j < m; ++j)
		out << (j ? std::string(1, delimiter) : "") << 'x' << (j + 1);
	if (weights)
		out << delimiter << "weight";
	if (dataset.has_labels())
		out << delimiter << "label";
	out << '\n';
	for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(dataset.size()); ++i) {
		for (Eigen::Index j = 0; j < m; ++j)
			out << (j ? std::string(1, delimiter) : "") << format_number(dataset.points()(i, j));
		if (weights)
			out << delimiter << format_number(dataset.weights()[i]);
		if (dataset.has_labels()) {
			const auto& label = dataset.labels()[static_cast<std::size_t>(i)];
			if (label.find(delimiter) != std::string::npos || label.find('\n') != std::string::npos)
				throw DataError("label '" + label + "' contains the delimiter");
			out << delimiter << label;
		}
		out << '\n';
	}
}

void save_csv(const std::string& path, const Dataset& dataset, char delimiter)
{
	std::ostringstream out;
	write_csv(out, dataset, delimiter);
	write_text_file(path, out.str());
}

std::string read_text_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw DataError("cannot open '" + path + "' for reading");
	std::ostringstream buffer;
	buffer << in.rdbuf();
	return buffer.str();
}

void write_text_file(const std::string& path, std::string_view content)
{
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out)
		throw DataError("cannot open '" + path + "' for writing");
	out.write(content.data(), static_cast<std::streamsize>(content.size()));
	if (!out)
		throw DataError("failed writing '" + path + "'");
}

} // namespace epg
