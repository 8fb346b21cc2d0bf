#ifndef FRACSTA_PROTOCOL_HPP
#define FRACSTA_PROTOCOL_HPP

#include <string>
#include <string_view>

namespace fracsta {

/// f-STIRAP drives with H0 only; f-STA adds the counterdiabatic term H_a.
enum class Protocol { FStirap, FSta };

enum class SystemKind { Lambda, Tripod };

inline std::string_view to_string(Protocol p)
{
    return p == Protocol::FSta ? "f-sta" : "f-stirap";
}

inline std::string_view to_string(SystemKind s)
{
    return s == SystemKind::Lambda ? "lambda" : "tripod";
}

inline constexpr int dimension(SystemKind s) { return s == SystemKind::Lambda ? 3 : 4; }

} // namespace fracsta

#endif // FRACSTA_PROTOCOL_HPP
