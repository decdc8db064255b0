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

#include "dense_oracle.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qnt_test {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using qnt::GateType;

namespace {

Mat m2(cd a, cd b, cd c, cd d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Tensor product with factors[q] on qubit q.
Mat embed(const std::vector<Mat> &factors) {
    Mat out = Mat::Identity(1, 1);
    for (size_t q = factors.size(); q-- > 0;) {
        out = kron(out, factors[q]);
    }
    return out;
}

Mat single_matrix(GateType t, double theta) {
    const cd i(0, 1);
    const double r = 1.0 / std::sqrt(2.0);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    switch (t) {
        case GateType::X:
            return m2(0, 1, 1, 0);
        case GateType::Y:
            return m2(0, -i, i, 0);
        case GateType::Z:
            return m2(1, 0, 0, -1);
        case GateType::H:
            return m2(r, r, r, -r);
        case GateType::S:
            return m2(1, 0, 0, i);
        case GateType::SDG:
            return m2(1, 0, 0, -i);
        case GateType::T:
            return m2(1, 0, 0, std::polar(1.0, std::numbers::pi / 4));
        case GateType::TDG:
            return m2(1, 0, 0, std::polar(1.0, -std::numbers::pi / 4));
        case GateType::RX:
            return m2(c, -i * s, -i * s, c);
        case GateType::RY:
            return m2(c, -s, s, c);
        case GateType::RZ:
            return m2(std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2));
        default:
            throw std::logic_error("not a single-qubit gate");
    }
}

/// I - P + P*U where P projects every control onto |1>.
Mat controlled(const std::vector<uint32_t> &controls, uint32_t target, const Mat &u, uint32_t n) {
    const Mat id = Mat::Identity(2, 2);
    const Mat p1 = m2(0, 0, 0, 1);
    std::vector<Mat> proj(n, id), apply(n, id);
    for (uint32_t c : controls) {
        proj[c] = p1;
        apply[c] = p1;
    }
    apply[target] = u;
    Mat full = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    return full - embed(proj) + embed(apply);
}

}  // namespace

Mat gate_unitary(const qnt::Gate &g, uint32_t n) {
    const Mat id = Mat::Identity(2, 2);
    const auto &q = g.qubits;
    switch (g.type) {
        case GateType::CX:
            return controlled({q[0]}, q[1], single_matrix(GateType::X, 0), n);
        case GateType::CZ:
            return controlled({q[0]}, q[1], single_matrix(GateType::Z, 0), n);
        case GateType::CP:
            return controlled({q[0]}, q[1], m2(1, 0, 0, std::polar(1.0, g.theta)), n);
        case GateType::CCX:
            return controlled({q[0], q[1]}, q[2], single_matrix(GateType::X, 0), n);
        case GateType::MCX:
            return controlled(std::vector<uint32_t>(q.begin(), q.end() - 1), q.back(),
                              single_matrix(GateType::X, 0), n);
        case GateType::SWAP: {
            Mat out = Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
            for (GateType p : {GateType::X, GateType::Y, GateType::Z}) {
                std::vector<Mat> f(n, id);
                f[q[0]] = single_matrix(p, 0);
                f[q[1]] = single_matrix(p, 0);
                out += embed(f);
            }
            out += Mat::Identity(out.rows(), out.cols());
            return out / 2.0;
        }
        case GateType::MEASURE:
            throw std::logic_error("measurement has no unitary");
        default: {
            std::vector<Mat> f(n, id);
            f[q[0]] = single_matrix(g.type, g.theta);
            return embed(f);
        }
    }
}

Mat circuit_unitary(const qnt::Circuit &c) {
    Mat u = Mat::Identity(Eigen::Index{1} << c.num_qubits, Eigen::Index{1} << c.num_qubits);
    for (const qnt::Gate &g : c.gates) {
        if (g.type != GateType::MEASURE) {
            u = gate_unitary(g, c.num_qubits) * u;
        }
    }
    return u;
}

qnt::Distribution dense_distribution(const qnt::Circuit &c) {
    Eigen::VectorXcd psi = circuit_unitary(c).col(0);
    std::vector<std::pair<uint32_t, uint32_t>> meas;
    for (const qnt::Gate &g : c.gates) {
        if (g.type == GateType::MEASURE) {
            meas.emplace_back(g.qubits[0], *g.clbit);
        }
    }
    std::map<uint64_t, double> by_value;
    for (Eigen::Index k = 0; k < psi.size(); k++) {
        uint64_t value = 0;
        for (auto [qubit, clbit] : meas) {
            if ((static_cast<uint64_t>(k) >> qubit) & 1) {
                value |= uint64_t{1} << clbit;
            }
        }
        by_value[value] += std::norm(psi(k));
    }
    qnt::Distribution out;
    for (auto [v, p] : by_value) {
        if (p >= 1e-14) {
            out[qnt::BitString::from_index(v, c.num_clbits)] = p;
        }
    }
    return out;
}

qnt::Circuit random_test_circuit(std::mt19937_64 &rng, uint32_t n, size_t num_gates) {
    std::vector<GateType> types;
    for (int t = 0; t < static_cast<int>(GateType::MEASURE); t++) {
        auto g = static_cast<GateType>(t);
        size_t arity = g == GateType::MCX ? 3 : *qnt::fixed_arity(g);
        if (arity <= n) {
            types.push_back(g);
        }
    }
    std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
    qnt::Circuit c;
    c.num_qubits = n;
    for (size_t k = 0; k < num_gates; k++) {
        GateType t = types[std::uniform_int_distribution<size_t>(0, types.size() - 1)(rng)];
        std::vector<uint32_t> qs(n);
        for (uint32_t i = 0; i < n; i++) {
            qs[i] = i;
        }
        std::shuffle(qs.begin(), qs.end(), rng);
        qnt::Gate g;
        g.type = t;
        size_t arity = t == GateType::MCX ? n : *qnt::fixed_arity(t);
        g.qubits.assign(qs.begin(), qs.begin() + static_cast<std::ptrdiff_t>(arity));
        if (t == GateType::MCX) {
            g.num_controls = static_cast<uint32_t>(arity - 1);
        }
        if (qnt::gate_has_angle(t)) {
            g.theta = angle(rng);
        }
        c.gates.push_back(g);
    }
    qnt::measure_all(c);
    return c;
}

}  // namespace qnt_test
