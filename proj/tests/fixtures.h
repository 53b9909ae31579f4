#pragma once

#include <string_view>

namespace stylevox::fixtures {

inline constexpr std::string_view kBrownsMr =
    "inform(name[Browns Cambridge], eatType[pub], priceRange[average], food[Italian], near[Adriatic], "
    "familyFriendly[yes], area[city centre])";

// Published example outputs for kBrownsMr, one per voice configuration.
inline constexpr std::string_view kDisagreeableText =
    "Browns Cambridge is damn moderately priced, also it's in city centre. It is a pub. It is an italian "
    "place. It is near Adriatic. It is damn family friendly.";
inline constexpr std::string_view kConscientiousText =
    "Let's see what we can find on Browns Cambridge. I see, well it is a pub, also it is moderately priced, "
    "an italian restaurant near Adriatic and family friendly in city centre.";
inline constexpr std::string_view kDisagrConscText =
    "Browns Cambridge is an italian place and moderately priced. It is near Adriatic. It is kid friendly. "
    "It is a pub. It is in city centre.";
inline constexpr std::string_view kExtravertText =
    "Browns Cambridge is a pub, also it is moderately priced, an italian place near Adriatic, also it is "
    "family friendly, you know and it's in city centre, you know!";
inline constexpr std::string_view kDisagrExtraText =
    "Damn moderately priced Browns Cambridge is it 's a pub, also it is near Adriatic. It is an italian "
    "place and moderately priced. It is in city centre.";
inline constexpr std::string_view kUnconscientiousText =
    "Oh god yeah, i don't know. Browns Cambridge is a pub, also it is damn family friendly, also it's an "
    "italian place near Adriatic, also it is darn moderately priced in city centre.";

}  // namespace stylevox::fixtures
