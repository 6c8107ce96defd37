/**
 * Converts a sentence to title case, capitalizing each word.
 *
 * @param {string} sentence words separated by single spaces
 * @returns {string} the title-cased sentence
 */
function titleCase(sentence) {
  const words = sentence.split(" ");
  const out = [];
  for (const word of words) {
    if (word.length > 0) {
      out.push(word[0].toUpperCase() + word.slice(1));
    }
  }
  return out.join(" ");
}

module.exports = { titleCase };
