#ifndef CHIPNOISE_VERSION_HPP
#define CHIPNOISE_VERSION_HPP

#define CHIPNOISE_VERSION_MAJOR 1
#define CHIPNOISE_VERSION_MINOR 0
#define CHIPNOISE_VERSION_PATCH 0
#define CHIPNOISE_VERSION_STRING "1.0.0"

#endif
