#pragma once

#include "epg/dataset.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace epg {

/// Genotype status codes: one row per individual, one column per SNP.
struct SnpTable
{
	std::vector<std::string> snp_names;
	std::vector<std::vector<std::string>> codes;
	/// Optional per-individual labels (empty when absent).
	std::vector<std::string> labels;
};

struct SnpOptions
{
	char delimiter = '\t';
	/// Header name of a column holding individual labels, if any.
	std::string label_column;
	/// Codes treated as unreliable; a SNP containing any of them is dropped.
	std::vector<std::string> missing_codes{"NN", "--", "00", "?", "NA", "."};
};

struct SnpEncoding
{
	Dataset dataset;
	std::vector<std::string> kept;
	std::vector<std::string> dropped;
};

/// Parse a delimited SNP table with a header row.
SnpTable parse_snp_table(std::string_view text, const SnpOptions& options = {},
                         const std::string& source = "<input>");
SnpTable load_snp_table(const std::string& path, const SnpOptions& options = {});

/// A code is homozygous when all of its allele characters agree ('/' and
/// '|' separators are ignored), e.g. "AA" or "G/G".
bool is_homozygous(std::string_view code);

/// Per SNP: homozygous codes map to 0 and the heterozygous codes, in
/// lexicographic order, to -1 then +1. SNPs containing a missing code are
/// dropped. Throws DataError naming the SNP when it has more than three
/// distinct statuses or more than two heterozygous ones, and when no SNP
/// survives filtering.
SnpEncoding snp_encode(const SnpTable& table, const std::vector<std::string>& missing_codes = SnpOptions{}.missing_codes);

} // namespace epg
