#ifndef CPWB_TEXT_HPP
#define CPWB_TEXT_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpwb/formula.hpp"
#include "cpwb/oracle.hpp"
#include "cpwb/process.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                           ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

// Surface grammar. `#` starts a comment running to the end of the line.
Formula parse_type(const std::string& text);
Process parse_process(const std::string& text);
TypingContext parse_context(const std::string& text);
// Same, keeping the order the names were written in.
std::vector<std::pair<Name, Formula>> parse_context_list(const std::string& text);
// zero | [P] | cut x:A (C, C) | mix (C, C) | cweak x:A.C | ccon x1,x2.C
Configuration parse_config(const std::string& text);

}  // namespace cpwb

#endif
