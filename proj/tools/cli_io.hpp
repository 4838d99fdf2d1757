#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrlab/multiplicative.hpp"
#include "corrlab/recurrence.hpp"

namespace corrlab_cli {

// full:N | empty:N | multiples:k:N | random:density:seed:N | file:PATH | hex:PATH
corrlab::SubsetMask parse_set_spec(const std::string& spec);

// catalogue name (one, liouville, random:SEED, character:Q:J) or
// comma-separated prime:phase-in-turns pairs, e.g. "2:0.5,3:1/3"
corrlab::MultiplicativeFunction parse_chi_spec(const std::string& spec);

// "1,0,2" -> integers; expect > 0 enforces an exact count
std::vector<std::int64_t> parse_int_list(const std::string& text, std::size_t expect = 0);

nlohmann::json read_json_file(const std::string& path);

// single flattened record, or a table when the document holds "rows"
std::string render_csv(const nlohmann::json& doc);

}  // namespace corrlab_cli
