#include "mpfa/signal_io.hpp"

#include "mpfa/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace mpfa {

SignalFormat signal_format_from_string(const std::string& s) {
    if (s == "json")
        return SignalFormat::Json;
    if (s == "csv")
        return SignalFormat::Csv;
    throw DomainError("unknown signal format: " + s);
}

SignalFormat signal_format_from_path(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot != std::string::npos && path.substr(dot) == ".csv")
        return SignalFormat::Csv;
    return SignalFormat::Json;
}

namespace {

std::vector<cplx> parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        std::vector<cplx> x;
        for (const auto& pair : j.at("data")) {
            if (!pair.is_array() || pair.size() != 2)
                throw DomainError("signal json: each sample must be [re, im]");
            x.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        if (j.contains("n") && j.at("n").get<std::size_t>() != x.size())
            throw DomainError("signal json: n does not match the number of samples");
        return x;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("signal json: ") + e.what());
    }
}

std::vector<cplx> parse_csv(const std::string& text) {
    std::vector<cplx> x;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        if (lineno == 1 && line.find_first_of("0123456789") == std::string::npos)
            continue;
        const auto comma = line.find(',');
        try {
            const double re = std::stod(line.substr(0, comma));
            const double im = comma == std::string::npos ? 0.0 : std::stod(line.substr(comma + 1));
            x.emplace_back(re, im);
        } catch (const std::exception&) {
            throw DomainError("signal csv: cannot parse line " + std::to_string(lineno));
        }
    }
    return x;
}

} // namespace

std::vector<cplx> parse_signal(const std::string& text, SignalFormat fmt) {
    return fmt == SignalFormat::Json ? parse_json(text) : parse_csv(text);
}

std::string format_signal(std::span<const cplx> x, SignalFormat fmt) {
    if (fmt == SignalFormat::Json) {
        nlohmann::json data = nlohmann::json::array();
        for (const cplx& v : x)
            data.push_back({v.real(), v.imag()});
        return nlohmann::json{{"n", x.size()}, {"data", data}}.dump() + "\n";
    }
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << "re,im\n";
    for (const cplx& v : x)
        os << v.real() << ',' << v.imag() << '\n';
    return os.str();
}

std::vector<cplx> read_signal(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_signal(buf.str(), signal_format_from_path(path));
}

void write_signal(const std::string& path, std::span<const cplx> x, SignalFormat fmt) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << format_signal(x, fmt);
}

} // namespace mpfa
