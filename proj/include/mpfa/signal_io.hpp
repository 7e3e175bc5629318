#pragma once

#include "mpfa/numeric.hpp"

#include <span>
#include <string>
#include <vector>

namespace mpfa {

enum class SignalFormat { Json, Csv };

SignalFormat signal_format_from_string(const std::string& s);
// By extension: .csv is Csv, anything else Json.
SignalFormat signal_format_from_path(const std::string& path);

// Json: {"n": N, "data": [[re, im], ...]}.  Csv: one "re,im" pair per line, optional header.
std::vector<cplx> parse_signal(const std::string& text, SignalFormat fmt);
std::string format_signal(std::span<const cplx> x, SignalFormat fmt);

std::vector<cplx> read_signal(const std::string& path);
void write_signal(const std::string& path, std::span<const cplx> x, SignalFormat fmt);

} // namespace mpfa
