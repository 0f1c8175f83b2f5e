#include "json_text.hpp"

#include <cmath>
#include <cstdio>

namespace rmap::detail {

std::string format_number(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

void JsonWriter::newline() {
    out_ += '\n';
    out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!stack_.empty()) {
        if (!stack_.back().empty) {
            out_ += ',';
        }
        stack_.back().empty = false;
        newline();
    }
}

void JsonWriter::begin_object() {
    before_value();
    out_ += '{';
    stack_.push_back({true, true});
}

void JsonWriter::end_object() {
    const bool empty = stack_.back().empty;
    stack_.pop_back();
    if (!empty) {
        newline();
    }
    out_ += '}';
}

void JsonWriter::begin_array() {
    before_value();
    out_ += '[';
    stack_.push_back({false, true});
}

void JsonWriter::end_array() {
    const bool empty = stack_.back().empty;
    stack_.pop_back();
    if (!empty) {
        newline();
    }
    out_ += ']';
}

void JsonWriter::key(std::string_view k) {
    before_value();
    out_ += quote(k);
    out_ += ": ";
    after_key_ = true;
}

void JsonWriter::value(std::string_view s) {
    before_value();
    out_ += quote(s);
}

void JsonWriter::value(double v) {
    before_value();
    out_ += format_number(v);
}

void JsonWriter::value(std::uint64_t v) {
    before_value();
    out_ += std::to_string(v);
}

void JsonWriter::value(bool b) {
    before_value();
    out_ += b ? "true" : "false";
}

void JsonWriter::null() {
    before_value();
    out_ += "null";
}

void JsonWriter::inline_array(const std::vector<double>& values) {
    before_value();
    out_ += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ += i ? ", " : "";
        out_ += format_number(values[i]);
    }
    out_ += ']';
}

void JsonWriter::inline_array(const std::vector<std::string>& values) {
    before_value();
    out_ += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ += i ? ", " : "";
        out_ += quote(values[i]);
    }
    out_ += ']';
}

std::string JsonWriter::take() {
    out_ += '\n';
    return std::move(out_);
}

}  // namespace rmap::detail
