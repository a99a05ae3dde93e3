#include "secrecylab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace secrecylab {

namespace {

std::vector<std::string> symbols_from(const Json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw ValidationError(std::string("missing or non-array field \"") + field + "\"");
    std::vector<std::string> symbols;
    for (const auto& s : j[field]) {
        if (s.is_string())
            symbols.push_back(s.get<std::string>());
        else
            symbols.push_back(s.dump());
    }
    return symbols;
}

std::vector<double> reals_from(const Json& j) {
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(real_from_json(v));
    return out;
}

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("cannot parse " + path.string() + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    out << value.dump(2) << "\n";
}

Json real_to_json(double value) {
    if (std::isinf(value)) return value > 0 ? Json("inf") : Json("-inf");
    return Json(value);
}

double real_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw ValidationError("non-numeric value \"" + s + "\"");
    }
    if (!j.is_number()) throw ValidationError("expected a number, got " + j.dump());
    return j.get<double>();
}

Pmf pmf_from_json(const Json& j) {
    const Alphabet alphabet(symbols_from(j, "alphabet"));
    if (!j.contains("probs") || !j["probs"].is_array())
        throw ValidationError("pmf document needs a \"probs\" array");
    return Pmf(alphabet, reals_from(j["probs"]));
}

Channel channel_from_json(const Json& j) {
    const Alphabet input(symbols_from(j, "input_alphabet"));
    const Alphabet output(symbols_from(j, "output_alphabet"));
    if (!j.contains("rows") || !j["rows"].is_array())
        throw ValidationError("channel document needs a \"rows\" array");
    std::vector<std::vector<double>> rows;
    for (const auto& row : j["rows"]) rows.push_back(reals_from(row));
    return Channel(input, output, rows);
}

JointPmf joint_from_json(const Json& j) {
    const Alphabet row(symbols_from(j, "row_alphabet"));
    const Alphabet col(symbols_from(j, "col_alphabet"));
    if (!j.contains("table") || !j["table"].is_array())
        throw ValidationError("joint document needs a \"table\" array");
    std::vector<std::vector<double>> table;
    for (const auto& r : j["table"]) table.push_back(reals_from(r));
    return JointPmf(row, col, table);
}

Json pmf_to_json(const Pmf& p) {
    Json j;
    j["alphabet"] = p.alphabet().symbols();
    j["probs"] = Json::array();
    for (double v : p.probs()) j["probs"].push_back(real_to_json(v));
    return j;
}

Json channel_to_json(const Channel& ch) {
    Json j;
    j["input_alphabet"] = ch.input_alphabet().symbols();
    j["output_alphabet"] = ch.output_alphabet().symbols();
    j["rows"] = Json::array();
    for (std::size_t x = 0; x < ch.input_alphabet().size(); ++x) {
        Json row = Json::array();
        for (double v : ch.row(x)) row.push_back(real_to_json(v));
        j["rows"].push_back(std::move(row));
    }
    return j;
}

Json joint_to_json(const JointPmf& joint) {
    Json j;
    j["row_alphabet"] = joint.row_alphabet().symbols();
    j["col_alphabet"] = joint.col_alphabet().symbols();
    j["table"] = Json::array();
    for (std::size_t r = 0; r < joint.row_alphabet().size(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < joint.col_alphabet().size(); ++c)
            row.push_back(real_to_json(joint(r, c)));
        j["table"].push_back(std::move(row));
    }
    return j;
}

}  // namespace secrecylab
