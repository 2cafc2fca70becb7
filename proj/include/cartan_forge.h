#ifndef CARTAN_FORGE_H
#define CARTAN_FORGE_H

/* C interface to the cartan-forge engine.
 *
 * Every run returns an opaque cf_result holding a rendered report and an
 * exit code: 0 all checks passed, 1 at least one check failed, 2 the input
 * could not be processed (the report then contains the error message).
 * Results must be released with cf_result_free. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cf_result cf_result;

/* Commands: "euler", "internal", "roundtrip", "reduce", "presymplectic".
 * `text` is a problem file. `json` selects JSON rendering (any nonzero
 * value wins over the file's [options] output setting). `max_order` > 0
 * overrides the file's max-order option; pass 0 to keep it. */
cf_result* cf_run_text(const char* command, const char* text, int json,
                       int max_order);

/* Same, reading the problem file from `path`. */
cf_result* cf_run_file(const char* command, const char* path, int json,
                       int max_order);

/* Runs the built-in example suite: `name` is one corpus entry or "all". */
cf_result* cf_run_corpus(const char* name, int json, int max_order);

/* Rendered report, NUL-terminated; owned by the result. Never NULL. */
const char* cf_result_report(const cf_result* res);

/* 0 pass, 1 check failure, 2 input error. */
int cf_result_exit_code(const cf_result* res);

void cf_result_free(cf_result* res);

const char* cf_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CARTAN_FORGE_H */
