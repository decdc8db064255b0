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

#include "qnt/regex_expand.h"

#include <algorithm>
#include <memory>

#include "qnt/errors.h"

namespace qnt {

namespace {

struct Node {
    enum Kind { CHARS, CONCAT, ALT, REPEAT } kind = CHARS;
    std::set<char> chars;
    std::vector<std::unique_ptr<Node>> kids;
    size_t min = 0;
    size_t max = 0;
};

using NodePtr = std::unique_ptr<Node>;

class RegexParser {
   public:
    explicit RegexParser(std::string_view p) : p_(p) {
        if (!p_.empty() && p_.front() == '^') {
            p_.remove_prefix(1);
        }
        if (!p_.empty() && p_.back() == '$' && (p_.size() < 2 || p_[p_.size() - 2] != '\\')) {
            p_.remove_suffix(1);
        }
    }

    NodePtr parse() {
        NodePtr n = alternation();
        if (i_ != p_.size()) {
            fail("unexpected '" + std::string(1, p_[i_]) + "'");
        }
        return n;
    }

   private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw RegexUnsupported("regex '" + std::string(p_) + "' at offset " + std::to_string(i_) + ": " + msg);
    }

    bool peek(char c) const {
        return i_ < p_.size() && p_[i_] == c;
    }

    NodePtr alternation() {
        auto alt = std::make_unique<Node>();
        alt->kind = Node::ALT;
        alt->kids.push_back(concatenation());
        while (peek('|')) {
            i_++;
            alt->kids.push_back(concatenation());
        }
        if (alt->kids.size() == 1) {
            return std::move(alt->kids[0]);
        }
        return alt;
    }

    NodePtr concatenation() {
        auto cat = std::make_unique<Node>();
        cat->kind = Node::CONCAT;
        while (i_ < p_.size() && !peek('|') && !peek(')')) {
            cat->kids.push_back(repetition());
        }
        return cat;
    }

    size_t number() {
        size_t start = i_;
        size_t v = 0;
        while (i_ < p_.size() && p_[i_] >= '0' && p_[i_] <= '9') {
            v = v * 10 + static_cast<size_t>(p_[i_] - '0');
            i_++;
        }
        if (i_ == start) {
            fail("expected a repetition count");
        }
        return v;
    }

    NodePtr repetition() {
        NodePtr atom_node = atom();
        while (i_ < p_.size()) {
            char c = p_[i_];
            size_t lo, hi;
            if (c == '*' || c == '+') {
                fail("unbounded repetition is not supported");
            } else if (c == '?') {
                i_++;
                lo = 0;
                hi = 1;
            } else if (c == '{') {
                i_++;
                lo = number();
                hi = lo;
                if (peek(',')) {
                    i_++;
                    if (peek('}')) {
                        fail("unbounded repetition is not supported");
                    }
                    hi = number();
                }
                if (!peek('}')) {
                    fail("expected '}'");
                }
                i_++;
                if (hi < lo) {
                    fail("repetition bounds out of order");
                }
            } else {
                break;
            }
            auto rep = std::make_unique<Node>();
            rep->kind = Node::REPEAT;
            rep->min = lo;
            rep->max = hi;
            rep->kids.push_back(std::move(atom_node));
            atom_node = std::move(rep);
        }
        return atom_node;
    }

    char escaped() {
        if (i_ >= p_.size()) {
            fail("dangling escape");
        }
        char c = p_[i_++];
        if (std::isalnum(static_cast<unsigned char>(c)) && c != 'd') {
            fail("escape class '\\" + std::string(1, c) + "' is not supported");
        }
        return c;
    }

    NodePtr atom() {
        auto n = std::make_unique<Node>();
        n->kind = Node::CHARS;
        char c = p_[i_];
        if (c == '(') {
            i_++;
            if (peek('?')) {
                fail("group modifiers are not supported");
            }
            NodePtr inner = alternation();
            if (!peek(')')) {
                fail("expected ')'");
            }
            i_++;
            return inner;
        }
        if (c == '.') {
            fail("'.' has an unbounded alphabet");
        }
        if (c == '[') {
            i_++;
            if (peek('^')) {
                fail("negated classes are not supported");
            }
            while (!peek(']')) {
                if (i_ >= p_.size()) {
                    fail("unterminated character class");
                }
                char lo = p_[i_++];
                if (lo == '\\') {
                    lo = escaped();
                }
                if (peek('-') && i_ + 1 < p_.size() && p_[i_ + 1] != ']') {
                    i_++;
                    char hi = p_[i_++];
                    if (hi < lo) {
                        fail("character range out of order");
                    }
                    for (int ch = lo; ch <= hi; ch++) {
                        n->chars.insert(static_cast<char>(ch));
                    }
                } else {
                    n->chars.insert(lo);
                }
            }
            i_++;
            if (n->chars.empty()) {
                fail("empty character class");
            }
            return n;
        }
        if (c == ')' || c == '{' || c == '}' || c == '?' || c == '*' || c == '+') {
            fail("unexpected '" + std::string(1, c) + "'");
        }
        i_++;
        if (c == '\\') {
            char e = escaped();
            if (e == 'd') {
                for (char d = '0'; d <= '9'; d++) {
                    n->chars.insert(d);
                }
                return n;
            }
            c = e;
        }
        n->chars.insert(c);
        return n;
    }

    std::string_view p_;
    size_t i_ = 0;
};

using Language = std::set<std::string>;

void check_limit(const Language &l, size_t limit) {
    if (l.size() > limit) {
        throw RangeTooLarge("regex language exceeds " + std::to_string(limit) + " strings");
    }
}

Language concat(const Language &a, const Language &b, size_t limit) {
    Language out;
    for (const std::string &x : a) {
        for (const std::string &y : b) {
            out.insert(x + y);
            check_limit(out, limit);
        }
    }
    return out;
}

Language expand(const Node &n, size_t limit) {
    switch (n.kind) {
        case Node::CHARS: {
            Language out;
            for (char c : n.chars) {
                out.insert(std::string(1, c));
            }
            return out;
        }
        case Node::CONCAT: {
            Language out{""};
            for (const NodePtr &k : n.kids) {
                out = concat(out, expand(*k, limit), limit);
            }
            return out;
        }
        case Node::ALT: {
            Language out;
            for (const NodePtr &k : n.kids) {
                Language part = expand(*k, limit);
                out.insert(part.begin(), part.end());
                check_limit(out, limit);
            }
            return out;
        }
        case Node::REPEAT: {
            Language base = expand(*n.kids[0], limit);
            Language out;
            Language power{""};
            for (size_t k = 0; k <= n.max; k++) {
                if (k >= n.min) {
                    out.insert(power.begin(), power.end());
                    check_limit(out, limit);
                }
                if (k < n.max) {
                    power = concat(power, base, limit);
                }
            }
            return out;
        }
    }
    return {};
}

void collect_alphabet(const Node &n, std::set<char> &out) {
    if (n.kind == Node::CHARS) {
        out.insert(n.chars.begin(), n.chars.end());
    }
    for (const NodePtr &k : n.kids) {
        collect_alphabet(*k, out);
    }
}

}  // namespace

std::vector<std::string> expand_regex(std::string_view pattern, size_t limit) {
    NodePtr root = RegexParser(pattern).parse();
    Language l = expand(*root, limit);
    return {l.begin(), l.end()};
}

std::set<char> regex_alphabet(std::string_view pattern) {
    NodePtr root = RegexParser(pattern).parse();
    std::set<char> out;
    collect_alphabet(*root, out);
    return out;
}

}  // namespace qnt
