"""Regenerates the tiny reference checkpoints used by the lm tests.

Each fixture directory holds a randomly initialised masked LM saved in the
Hugging Face layout plus expected.json with token ids, last-layer hidden
states and mask logits computed by PyTorch.
"""
import json
import pathlib

import torch
from tokenizers import AddedToken, ByteLevelBPETokenizer
from transformers import (BertConfig, BertForMaskedLM, BertTokenizer,
                          RobertaConfig, RobertaForMaskedLM, RobertaTokenizer)

HERE = pathlib.Path(__file__).resolve().parent / "fixtures"

CORPUS = [
    "The old lady walks as slow as a snail.",
    "The toddler was running around as busy as a bee.",
    "Johan runs as fast as a deer.",
    "She is as innocent as a newborn lamb.",
    "The sky is blue and the grass is green.",
    "He was as cold as ice, as quiet as a mouse.",
    "My brother's room isn't as messy as yours.",
    "The cat sleeps all day, lazy and warm.",
]

SENTENCES = [
    ["The", "old", "lady", "walks", "as", "slow", "as", "a", "snail", "."],
    ["Johan", "runs", "as", "[MASK]", "as", "a", "deer", "."],
    ["My", "brother", "'s", "room", "is", "as", "[MASK]", "as", "ice", "!"],
    ["Zyx", "glorbed", "as", "[MASK]", "as", "a", "bee", "."],
]


def detok(tokens, mask):
    out = ""
    for i, t in enumerate(tokens):
        t = mask if t == "[MASK]" else t
        attach = t in {".", ",", "!", "?", ";", ":", ")"} or (t.startswith("'") and len(t) > 1)
        out += ("" if i == 0 or attach else " ") + t
    return out


def dump(model, tok, tokens_list, mask, path):
    model.eval()
    cases = []
    with torch.no_grad():
        for tokens in tokens_list:
            text = detok(tokens, mask)
            enc = tok(text, return_tensors="pt")
            out = model(**enc, output_hidden_states=True)
            ids = enc["input_ids"][0].tolist()
            case = {
                "tokens": tokens,
                "text": text,
                "ids": ids,
                "hidden_last": out.hidden_states[-1][0].double().tolist(),
                "hidden_embed": out.hidden_states[0][0].double().tolist(),
            }
            if tok.mask_token_id in ids:
                pos = ids.index(tok.mask_token_id)
                case["mask_position"] = pos
                case["mask_logits"] = out.logits[0, pos].double().tolist()
            cases.append(case)
    (path / "expected.json").write_text(json.dumps({"cases": cases}))


def make_bert():
    path = HERE / "tiny_bert"
    path.mkdir(parents=True, exist_ok=True)
    words = sorted({w.lower().strip(".,!'?") for s in CORPUS for w in s.split()} - {""})
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", ".", ",", "!", "'", "s", "##s",
             "##ed", "##ing", "z", "##y", "##x", "g", "##l", "##o", "##r", "##b"] + words
    vocab = list(dict.fromkeys(vocab))
    (path / "vocab.txt").write_text("\n".join(vocab) + "\n")
    tok = BertTokenizer(str(path / "vocab.txt"), do_lower_case=True)
    torch.manual_seed(1)
    config = BertConfig(vocab_size=len(vocab), hidden_size=32, num_hidden_layers=2,
                        num_attention_heads=4, intermediate_size=64,
                        max_position_embeddings=64, type_vocab_size=2)
    model = BertForMaskedLM(config)
    with torch.no_grad():
        for p in model.parameters():
            p.add_(0.05 * torch.randn_like(p))
    model.save_pretrained(path, safe_serialization=True)
    tok.save_pretrained(path)
    dump(model, tok, SENTENCES, "[MASK]", path)


def make_roberta():
    path = HERE / "tiny_roberta"
    path.mkdir(parents=True, exist_ok=True)
    bpe = ByteLevelBPETokenizer()
    bpe.train_from_iterator(CORPUS * 4, vocab_size=400, min_frequency=2,
                            special_tokens=["<s>", "<pad>", "</s>", "<unk>", "<mask>"])
    bpe.save_model(str(path))
    tok = RobertaTokenizer(str(path / "vocab.json"), str(path / "merges.txt"),
                           mask_token=AddedToken("<mask>", lstrip=True))
    torch.manual_seed(2)
    config = RobertaConfig(vocab_size=len(tok), hidden_size=24, num_hidden_layers=2,
                           num_attention_heads=3, intermediate_size=48,
                           max_position_embeddings=66, type_vocab_size=1, pad_token_id=1)
    model = RobertaForMaskedLM(config)
    with torch.no_grad():
        for p in model.parameters():
            p.add_(0.05 * torch.randn_like(p))
    model.save_pretrained(path, safe_serialization=True)
    tok.save_pretrained(path)
    dump(model, tok, SENTENCES, "<mask>", path)


if __name__ == "__main__":
    make_bert()
    make_roberta()
