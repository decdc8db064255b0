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

#pragma once

#include <string>
#include <string_view>

#include "qnt/circuit.h"

namespace qnt {

/// Parses the supported OpenQASM 2.0 subset.
///
/// Accepted statements: the `OPENQASM 2.0;` header, `include` (ignored), one
/// `qreg` (plus an optional ancilla register that must be named `anc`), at
/// most one `creg`, `barrier` (discarded), `measure a -> b;` and the gates
/// x y z h s sdg t tdg rx ry rz cp cx cz swap ccx mcx. `mcx` is an extension:
/// its last argument is the target and every other argument a control.
/// Angle arguments accept numbers, `pi`, + - * / and parentheses.
///
/// A `// circuit: NAME` comment sets Circuit::name.
///
/// Errors: SyntaxError (message starts with line:column), UnsupportedGate
/// (message names the gate), IndexOutOfRange, InvalidCircuit.
Circuit parse_qasm(std::string_view text);

/// Emits text that parse_qasm maps back to an equal Circuit. Angles are
/// printed with 17 significant digits.
std::string serialize_qasm(const Circuit &c);

}  // namespace qnt
