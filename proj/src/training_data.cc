// Copyright 2026 The QNT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnt/training_data.h"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "qnt/errors.h"

namespace qnt {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(std::string_view s, size_t line) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw SyntaxError("training csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::string training_rows_to_csv(const std::vector<TrainingRow> &rows) {
    std::string out(kTrainingCsvHeader);
    out += '\n';
    for (const TrainingRow &r : rows) {
        out += r.circuit_id + ',' + r.input.str() + ',' + r.state.str() + ',' + fmt(r.pos) + ',' + fmt(r.odr) +
               ',' + fmt(r.pof) + ',' + fmt(r.target) + '\n';
    }
    return out;
}

std::vector<TrainingRow> parse_training_csv(std::string_view text) {
    std::vector<TrainingRow> rows;
    size_t line_no = 0;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line_no == 1) {
            if (line != kTrainingCsvHeader) {
                throw SyntaxError("training csv: expected header '" + std::string(kTrainingCsvHeader) + "'");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> cells;
        size_t c0 = 0;
        while (true) {
            size_t c1 = line.find(',', c0);
            cells.push_back(line.substr(c0, c1 == std::string_view::npos ? std::string_view::npos : c1 - c0));
            if (c1 == std::string_view::npos) {
                break;
            }
            c0 = c1 + 1;
        }
        if (cells.size() != 7) {
            throw SyntaxError("training csv line " + std::to_string(line_no) + ": expected 7 columns");
        }
        TrainingRow r;
        r.circuit_id = std::string(cells[0]);
        r.input = BitString(std::string(cells[1]));
        r.state = BitString(std::string(cells[2]));
        r.pos = parse_double(cells[3], line_no);
        r.odr = parse_double(cells[4], line_no);
        r.pof = parse_double(cells[5], line_no);
        r.target = parse_double(cells[6], line_no);
        if (!(r.pos >= 0.0 && r.pos <= 1.0) || !(r.target >= 0.0 && r.target <= 1.0)) {
            throw ValidationError("training csv line " + std::to_string(line_no) + ": pos/target outside [0,1]");
        }
        rows.push_back(std::move(r));
    }
    if (line_no == 0) {
        throw SyntaxError("training csv: empty input");
    }
    return rows;
}

}  // namespace qnt
