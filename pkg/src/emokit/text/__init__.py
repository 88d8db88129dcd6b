from .cleaning import build_stopwords, clean_text, tokenize
from .keywords import (
    UNLABELED,
    KeywordDictionary,
    keyword_classify,
    load_dictionary,
    save_dictionary,
    top_keywords,
)
from .tokenizer import (
    PAD_INDEX,
    UNKNOWN_INDEX,
    TokenizerState,
    fit_tokenizer,
    load_tokenizer,
    save_tokenizer,
    tokenize_and_pad,
)
from .dataset import TextSample, build_text_training_set, read_corpus_csv, write_corpus_csv
from .model import (
    BiLstmClassifier,
    TextModelConfig,
    text_forward,
    text_summary,
    text_train,
)
from .transcribe import (
    FixtureTranscriber,
    Transcriber,
    TranscriberUnavailableError,
    transcribe,
)
