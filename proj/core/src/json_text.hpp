#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rmap::detail {

// %.17g, which reads back to the same double. Non-finite values become null.
std::string format_number(double v);

std::string quote(std::string_view s);

// Streaming pretty-printer with two-space indentation. Keys are written in
// call order, so output bytes depend only on the call sequence.
class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(std::string_view k);

    void value(std::string_view s);
    void value(const char* s) { value(std::string_view(s)); }
    void value(const std::string& s) { value(std::string_view(s)); }
    void value(double v);
    void value(std::uint64_t v);
    void value(bool b);
    void null();

    // Arrays of scalars printed on one line.
    void inline_array(const std::vector<double>& values);
    void inline_array(const std::vector<std::string>& values);

    std::string take();

private:
    void before_value();
    void newline();

    struct Frame {
        bool is_object = false;
        bool empty = true;
    };
    std::string out_;
    std::vector<Frame> stack_;
    bool after_key_ = false;
};

}  // namespace rmap::detail
