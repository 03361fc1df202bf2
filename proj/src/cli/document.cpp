// Copyright 2026 The twostate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "document.hpp"

#include <sstream>

namespace twostate::cli {

namespace {

std::string number_text(const Json &v) { return v.dump(); }

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

bool is_complex(const Json &v) {
    return v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im") && v["re"].is_number() &&
           v["im"].is_number();
}

void flatten(const std::string &path, const Json &v, std::ostringstream &out) {
    if (is_complex(v)) {
        out << csv_field(path) << ',' << number_text(v["re"]) << ',' << number_text(v["im"]) << '\n';
    } else if (v.is_object()) {
        for (const auto &[key, child] : v.items()) {
            flatten(path.empty() ? key : path + "." + key, child, out);
        }
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            flatten(path + "[" + std::to_string(i) + "]", v[i], out);
        }
    } else if (v.is_number()) {
        out << csv_field(path) << ',' << number_text(v) << ",0\n";
    } else if (v.is_boolean()) {
        out << csv_field(path) << ',' << (v.get<bool>() ? 1 : 0) << ",0\n";
    } else if (v.is_string()) {
        out << csv_field(path) << ',' << csv_field(v.get<std::string>()) << ",\n";
    } else {
        out << csv_field(path) << ",,\n";
    }
}

}  // namespace

Json complex_json(Complex z) {
    Json j = Json::object();
    j["re"] = z.real() + 0.0;
    j["im"] = z.imag() + 0.0;
    return j;
}

std::string to_json_text(const Json &doc) { return doc.dump(2) + "\n"; }

std::string to_csv_text(const Json &doc) {
    std::ostringstream out;
    const Json &results = doc.at("results");
    if (results.contains("pdf")) {
        const Json &pdf = results["pdf"];
        std::vector<std::string> columns;
        for (const auto &[key, value] : pdf.items()) {
            columns.push_back(key);
        }
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << csv_field(columns[c]);
        }
        out << '\n';
        const std::size_t rows = pdf[columns.front()].size();
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < columns.size(); ++c) {
                out << (c ? "," : "") << number_text(pdf[columns[c]][r]);
            }
            out << '\n';
        }
        return out.str();
    }
    out << "name,re,im\n";
    flatten("", results, out);
    return out.str();
}

}  // namespace twostate::cli
