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

#include "qnt/qasm.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "qnt/errors.h"

namespace qnt {

namespace {

enum class Tok { Ident, Number, String, Symbol, Arrow, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {}

    /// Returns the value of a `// circuit: NAME` comment if one was seen.
    const std::optional<std::string> &circuit_name() const {
        return name_;
    }

    Token next() {
        skip_space_and_comments();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                advance();
            }
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
                advance();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                advance();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                    advance();
                }
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    advance();
                }
            }
            t.kind = Tok::Number;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (c == '"') {
            advance();
            size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                advance();
            }
            if (pos_ >= src_.size() || src_[pos_] != '"') {
                throw SyntaxError(std::to_string(t.line) + ":" + std::to_string(t.col) + ": unterminated string");
            }
            t.kind = Tok::String;
            t.text = std::string(src_.substr(start, pos_ - start));
            advance();
            return t;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            advance();
            advance();
            t.kind = Tok::Arrow;
            t.text = "->";
            return t;
        }
        advance();
        t.kind = Tok::Symbol;
        t.text = std::string(1, c);
        return t;
    }

   private:
    void advance() {
        if (src_[pos_] == '\n') {
            line_++;
            col_ = 1;
        } else {
            col_++;
        }
        pos_++;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                size_t start = pos_ + 2;
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
                record_name_comment(src_.substr(start, pos_ - start));
            } else {
                return;
            }
        }
    }

    void record_name_comment(std::string_view body) {
        constexpr std::string_view kKey = "circuit:";
        size_t i = 0;
        while (i < body.size() && body[i] == ' ') {
            i++;
        }
        if (body.substr(i, kKey.size()) != kKey) {
            return;
        }
        std::string_view rest = body.substr(i + kKey.size());
        size_t b = rest.find_first_not_of(" \t\r");
        size_t e = rest.find_last_not_of(" \t\r");
        name_ = b == std::string_view::npos ? std::string() : std::string(rest.substr(b, e - b + 1));
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::optional<std::string> name_;
};

struct Register {
    std::string name;
    uint32_t size = 0;
    uint32_t offset = 0;
};

/// Operand: whole register (index empty) or one element.
struct Operand {
    const Register *reg = nullptr;
    std::optional<uint32_t> index;
    Token at;
};

class Parser {
   public:
    explicit Parser(std::string_view text) : lex_(text) {
        cur_ = lex_.next();
    }

    Circuit parse() {
        expect_ident("OPENQASM");
        Token v = cur_;
        if (v.kind != Tok::Number || v.text != "2.0") {
            fail(v, "expected version 2.0 after OPENQASM");
        }
        bump();
        expect_symbol(";");

        while (cur_.kind != Tok::End) {
            statement();
        }

        Circuit c;
        c.name = lex_.circuit_name().value_or(std::string());
        if (!qreg_) {
            throw SyntaxError("1:1: missing qreg declaration");
        }
        c.qreg_name = qreg_->name;
        c.num_qubits = qreg_->size + (anc_ ? anc_->size : 0);
        c.num_ancillas = anc_ ? anc_->size : 0;
        if (creg_) {
            c.creg_name = creg_->name;
            c.num_clbits = creg_->size;
        }
        c.gates = std::move(gates_);
        c.validate();
        return c;
    }

   private:
    [[noreturn]] void fail(const Token &t, const std::string &msg) {
        throw SyntaxError(std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
    }

    void bump() {
        cur_ = lex_.next();
    }

    bool is_symbol(std::string_view s) const {
        return cur_.kind == Tok::Symbol && cur_.text == s;
    }

    void expect_symbol(std::string_view s) {
        if (!is_symbol(s)) {
            fail(cur_, "expected '" + std::string(s) + "', found '" + cur_.text + "'");
        }
        bump();
    }

    std::string expect_ident(std::string_view want = {}) {
        if (cur_.kind != Tok::Ident || (!want.empty() && cur_.text != want)) {
            fail(cur_, want.empty() ? "expected identifier" : "expected '" + std::string(want) + "'");
        }
        std::string s = cur_.text;
        bump();
        return s;
    }

    uint32_t expect_uint() {
        if (cur_.kind != Tok::Number || cur_.text.find_first_not_of("0123456789") != std::string::npos) {
            fail(cur_, "expected non-negative integer");
        }
        uint32_t v = 0;
        auto [p, ec] = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), v);
        if (ec != std::errc()) {
            fail(cur_, "integer out of range");
        }
        bump();
        return v;
    }

    void statement() {
        Token head = cur_;
        std::string word = expect_ident();
        if (word == "include") {
            if (cur_.kind != Tok::String) {
                fail(cur_, "expected file name string");
            }
            bump();
            expect_symbol(";");
        } else if (word == "qreg" || word == "creg") {
            declare(head, word == "qreg");
        } else if (word == "barrier") {
            while (!is_symbol(";")) {
                if (cur_.kind == Tok::End) {
                    fail(cur_, "unterminated barrier");
                }
                bump();
            }
            bump();
        } else if (word == "measure") {
            measure();
        } else if (word == "gate" || word == "opaque" || word == "if" || word == "reset") {
            throw UnsupportedGate("unsupported statement '" + word + "' at " + std::to_string(head.line) + ":" +
                                  std::to_string(head.col));
        } else {
            gate(head, word);
        }
    }

    void declare(const Token &head, bool quantum) {
        Token name_tok = cur_;
        std::string name = expect_ident();
        expect_symbol("[");
        uint32_t size = expect_uint();
        expect_symbol("]");
        expect_symbol(";");
        if (size == 0) {
            fail(name_tok, "register '" + name + "' must have positive size");
        }
        if (quantum) {
            if (!gates_.empty()) {
                fail(head, "qreg declared after gates");
            }
            if (!qreg_) {
                qreg_ = Register{name, size, 0};
            } else if (!anc_ && name == "anc" && qreg_->name != "anc") {
                anc_ = Register{name, size, qreg_->size};
            } else {
                fail(head, "at most one quantum register (plus an 'anc' ancilla register) is supported");
            }
        } else {
            if (creg_) {
                fail(head, "at most one classical register is supported");
            }
            creg_ = Register{name, size, 0};
        }
    }

    const Register *lookup(const Token &t, const std::string &name, bool quantum) {
        if (quantum) {
            if (qreg_ && qreg_->name == name) {
                return &*qreg_;
            }
            if (anc_ && anc_->name == name) {
                return &*anc_;
            }
        } else if (creg_ && creg_->name == name) {
            return &*creg_;
        }
        fail(t, std::string("unknown ") + (quantum ? "quantum" : "classical") + " register '" + name + "'");
    }

    Operand operand(bool quantum) {
        Token t = cur_;
        std::string name = expect_ident();
        Operand op{lookup(t, name, quantum), std::nullopt, t};
        if (is_symbol("[")) {
            bump();
            Token idx_tok = cur_;
            uint32_t idx = expect_uint();
            expect_symbol("]");
            if (idx >= op.reg->size) {
                throw IndexOutOfRange(std::to_string(idx_tok.line) + ":" + std::to_string(idx_tok.col) + ": index " +
                                      std::to_string(idx) + " out of range for register '" + name + "[" +
                                      std::to_string(op.reg->size) + "]'");
            }
            op.index = idx;
        }
        return op;
    }

    void measure() {
        Operand q = operand(true);
        if (cur_.kind != Tok::Arrow) {
            fail(cur_, "expected '->'");
        }
        bump();
        Operand c = operand(false);
        expect_symbol(";");
        if (q.index.has_value() != c.index.has_value()) {
            fail(q.at, "measure operands must both be indexed or both be whole registers");
        }
        if (q.index) {
            gates_.push_back(Gate::measure(q.reg->offset + *q.index, *c.index));
            return;
        }
        if (q.reg->size != c.reg->size) {
            fail(q.at, "register sizes differ in broadcast measure");
        }
        for (uint32_t i = 0; i < q.reg->size; i++) {
            gates_.push_back(Gate::measure(q.reg->offset + i, i));
        }
    }

    void gate(const Token &head, const std::string &word) {
        auto type = gate_type_from_name(word);
        if (!type || *type == GateType::MEASURE) {
            throw UnsupportedGate("unsupported gate '" + word + "' at " + std::to_string(head.line) + ":" +
                                  std::to_string(head.col));
        }
        std::vector<double> params;
        if (is_symbol("(")) {
            bump();
            if (!is_symbol(")")) {
                params.push_back(expr());
                while (is_symbol(",")) {
                    bump();
                    params.push_back(expr());
                }
            }
            expect_symbol(")");
        }
        size_t want_params = gate_has_angle(*type) ? 1 : 0;
        if (params.size() != want_params) {
            fail(head, "gate '" + word + "' takes " + std::to_string(want_params) + " parameter(s)");
        }

        std::vector<Operand> args{operand(true)};
        while (is_symbol(",")) {
            bump();
            args.push_back(operand(true));
        }
        expect_symbol(";");

        double theta = params.empty() ? 0.0 : params[0];
        auto arity = fixed_arity(*type);
        if (arity && *arity == 1 && args.size() == 1 && !args[0].index) {
            for (uint32_t i = 0; i < args[0].reg->size; i++) {
                gates_.push_back(Gate::single(*type, args[0].reg->offset + i, theta));
            }
            return;
        }
        std::vector<uint32_t> qubits;
        for (const Operand &a : args) {
            if (!a.index) {
                fail(a.at, "whole-register operands are only supported for single-qubit gates");
            }
            qubits.push_back(a.reg->offset + *a.index);
        }
        if (arity && qubits.size() != *arity) {
            fail(head, "gate '" + word + "' expects " + std::to_string(*arity) + " qubit(s), got " +
                           std::to_string(qubits.size()));
        }
        if (!arity && qubits.size() < 2) {
            fail(head, "mcx expects at least one control and a target");
        }
        Gate g;
        g.type = *type;
        g.theta = theta;
        g.qubits = std::move(qubits);
        if (*type == GateType::MCX) {
            g.num_controls = static_cast<uint32_t>(g.qubits.size() - 1);
        }
        gates_.push_back(std::move(g));
    }

    // expr := term (('+'|'-') term)*
    double expr() {
        double v = term();
        while (is_symbol("+") || is_symbol("-")) {
            bool plus = is_symbol("+");
            bump();
            double r = term();
            v = plus ? v + r : v - r;
        }
        return v;
    }

    // term := unary (('*'|'/') unary)*
    double term() {
        double v = unary();
        while (is_symbol("*") || is_symbol("/")) {
            bool mul = is_symbol("*");
            Token op = cur_;
            bump();
            double r = unary();
            if (!mul && r == 0.0) {
                fail(op, "division by zero in angle expression");
            }
            v = mul ? v * r : v / r;
        }
        return v;
    }

    double unary() {
        if (is_symbol("-")) {
            bump();
            return -unary();
        }
        if (is_symbol("+")) {
            bump();
            return unary();
        }
        return primary();
    }

    double primary() {
        if (is_symbol("(")) {
            bump();
            double v = expr();
            expect_symbol(")");
            return v;
        }
        if (cur_.kind == Tok::Ident && cur_.text == "pi") {
            bump();
            return std::numbers::pi;
        }
        if (cur_.kind == Tok::Number) {
            double v = 0;
            auto [p, ec] = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), v);
            if (ec != std::errc() || p != cur_.text.data() + cur_.text.size()) {
                fail(cur_, "malformed number '" + cur_.text + "'");
            }
            bump();
            return v;
        }
        fail(cur_, "expected angle expression, found '" + cur_.text + "'");
    }

    Lexer lex_;
    Token cur_;
    std::optional<Register> qreg_;
    std::optional<Register> anc_;
    std::optional<Register> creg_;
    std::vector<Gate> gates_;
};

std::string format_angle(double theta) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", theta);
    return buf;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
    return Parser(text).parse();
}

std::string serialize_qasm(const Circuit &c) {
    std::ostringstream out;
    uint32_t main_size = c.num_input_qubits();
    auto qubit = [&](uint32_t q) {
        if (q < main_size) {
            return c.qreg_name + "[" + std::to_string(q) + "]";
        }
        return "anc[" + std::to_string(q - main_size) + "]";
    };

    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    if (!c.name.empty()) {
        out << "// circuit: " << c.name << "\n";
    }
    out << "qreg " << c.qreg_name << "[" << main_size << "];\n";
    if (c.num_ancillas > 0) {
        out << "qreg anc[" << c.num_ancillas << "];\n";
    }
    if (c.num_clbits > 0) {
        out << "creg " << c.creg_name << "[" << c.num_clbits << "];\n";
    }
    for (const Gate &g : c.gates) {
        if (g.type == GateType::MEASURE) {
            out << "measure " << qubit(g.qubits[0]) << " -> " << c.creg_name << "[" << *g.clbit << "];\n";
            continue;
        }
        out << gate_name(g.type);
        if (gate_has_angle(g.type)) {
            out << "(" << format_angle(g.theta) << ")";
        }
        for (size_t i = 0; i < g.qubits.size(); i++) {
            out << (i == 0 ? " " : ",") << qubit(g.qubits[i]);
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace qnt
