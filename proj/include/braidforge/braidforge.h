/* braidforge C API: JSON documents in, JSON results out. */
#ifndef BRAIDFORGE_H
#define BRAIDFORGE_H

#include <stddef.h>

#if defined(BRAIDFORGE_BUILDING_LIBRARY)
#define BF_API __attribute__((visibility("default")))
#else
#define BF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the first four double as process exit codes. */
typedef enum bf_status {
  BF_OK = 0,
  BF_FAIL = 1,
  BF_INPUT_ERROR = 2,
  BF_CAP_EXCEEDED = 3,
  BF_INTERNAL_ERROR = 4,
  BF_INVALID_ARGUMENT = 5
} bf_status;

typedef struct bf_context bf_context;
typedef struct bf_document bf_document;
typedef struct bf_result bf_result;

BF_API const char* bf_version(void);

BF_API bf_context* bf_context_new(void);
BF_API void bf_context_free(bf_context* ctx);

/* Options: "threads" (count), "timing" (0/1), "dim_cap" (count),
   "tolerance" (float). Values are text. Options apply process-wide. */
BF_API bf_status bf_context_set_option(bf_context* ctx, const char* key, const char* value);

/* JSON {"error","message","witness"} of the last failed call, or NULL.
   Owned by the context; valid until the next call on it. */
BF_API const char* bf_context_last_error(const bf_context* ctx);

/* Parses one document or an array of documents. */
BF_API bf_status bf_document_parse(bf_context* ctx, const char* json_text, bf_document** out);
/* "nleibniz", …, or "batch" for an array. Owned by the document. */
BF_API const char* bf_document_kind(const bf_document* doc);
/* Canonical JSON text, owned by the document. */
BF_API const char* bf_document_to_json(const bf_document* doc);
BF_API void bf_document_free(bf_document* doc);

/* Each of these stores a result (also on BF_FAIL) and returns the status. */
BF_API bf_status bf_check_document(bf_context* ctx, const bf_document* doc, bf_result** out);

/* params: "k=v" strings, may be NULL when count is 0; with may be NULL. */
BF_API bf_status bf_build(bf_context* ctx, const char* construction, const bf_document* doc, const bf_document* with,
                          const char* const* params, size_t param_count, int recheck, bf_result** out);

BF_API bf_status bf_verify(bf_context* ctx, const char* equation, const bf_document* doc, int allow_pre,
                           int allow_large, const char* const* params, size_t param_count, bf_result** out);

BF_API bf_status bf_enumerate(bf_context* ctx, size_t m, size_t n, const char* filter, int dump, bf_result** out);

BF_API bf_status bf_demo(bf_context* ctx, bf_result** out);

/* Newline-separated construction names. Static storage. */
BF_API const char* bf_construction_names(void);

/* Canonical (sorted-key) JSON text; indent < 0 gives one line. */
BF_API const char* bf_result_json(bf_result* result, int indent);
BF_API void bf_result_free(bf_result* result);

#ifdef __cplusplus
}
#endif

#endif /* BRAIDFORGE_H */
